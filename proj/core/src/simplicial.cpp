#include "oed/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "oed/errors.hpp"
#include "oed/optimality.hpp"

namespace oed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd greedy_fill(const std::vector<int>& order, const WeightedCells& cells,
                            double C) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(cells.size());
  double budget = C;
  for (int idx : order) {
    if (budget <= 0.0) break;
    const double vol = cells.volumes[idx];
    if (budget >= vol) {
      s[idx] = 1.0;
      budget -= vol;
    } else {
      s[idx] = budget / vol;
      budget = 0.0;
    }
  }
  return s;
}

int support_size(const Eigen::VectorXd& w) {
  int nnz = 0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] != 0.0) ++nnz;
  return nnz;
}

}  // namespace

Eigen::VectorXd greedy_vertex_lp(const Eigen::VectorXd& scores,
                                 const WeightedCells& cells, double C) {
  const int m = static_cast<int>(scores.size());
  if (!(C > 0.0) || C > cells.total())
    throw BudgetInfeasibleError("greedy vertex budget out of range");
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return a < b;
  });

  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  double budget = C;
  // Walk groups of exactly equal scores so ties share the leftover budget
  // proportionally to their volumes.
  int a = 0;
  while (a < m && budget > 0.0) {
    int b = a;
    double group_vol = 0.0;
    while (b < m && scores[order[b]] == scores[order[a]]) group_vol += cells.volumes[order[b++]];
    if (budget >= group_vol) {
      for (int i = a; i < b; ++i) s[order[i]] = 1.0;
      budget -= group_vol;
    } else {
      const double frac = budget / group_vol;
      for (int i = a; i < b; ++i) s[order[i]] = frac;
      budget = 0.0;
    }
    a = b;
  }
  return s;
}

Eigen::VectorXd random_vertex(SplitMix64& rng, const WeightedCells& cells, double C) {
  std::vector<int> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  return greedy_fill(order, cells, C);
}

TorsneyResult torsney_solve(const std::vector<SymMatrix>& fims, double q,
                            Eigen::VectorXd lambda0, double delta, int max_iter) {
  const int r = static_cast<int>(fims.size());
  TorsneyResult out;
  out.lambda = std::move(lambda0);
  const int n = fims.empty() ? 0 : fims[0].dim();

  Eigen::VectorXd d(r);
  for (int iter = 0;; ++iter) {
    SymMatrix lbar(n);
    for (int j = 0; j < r; ++j)
      if (out.lambda[j] != 0.0) lbar.axpy(out.lambda[j], fims[j]);
    const SpectralDecomposition eig = eigendecompose(lbar);
    if (!is_positive_definite(eig)) throw NotPositiveDefiniteError("torsney iterate");
    const SymMatrix g = grad_criterion(q, eig);

    double mind = kInf, denom = 0.0;
    for (int j = 0; j < r; ++j) {
      d[j] = g.frobenius_dot(fims[j]);
      mind = std::min(mind, d[j]);
      denom += out.lambda[j] * d[j];
    }

    // Complementarity test for the minimizing master: weight may only rest on
    // columns whose gradient inner product attains the minimum.
    bool stop = true;
    for (int j = 0; j < r; ++j) {
      if (out.lambda[j] * (d[j] - mind) > delta) {
        stop = false;
        break;
      }
    }
    if (stop) {
      out.iterations = iter;
      out.initial_satisfied = (iter == 0);
      out.status = SolveStatus::Converged;
      return out;
    }
    if (iter >= max_iter || denom == 0.0) {
      out.iterations = iter;
      out.status = SolveStatus::IterationLimit;
      return out;
    }

    for (int j = 0; j < r; ++j) out.lambda[j] *= d[j] / denom;
    out.lambda /= out.lambda.sum();  // exact-in-math invariant, kept against drift
  }
}

SdResult sd_solve(const ProblemSpec& p, const SdOptions& opt) {
  if (p.alpha != 0.0) throw std::invalid_argument("sd requires alpha = 0");
  if (p.q < 0.0 || p.q > 1.0) throw std::invalid_argument("sd requires q in [0, 1]");

  const double t_start = cpu_seconds_now();
  SdResult r;
  SplitMix64 rng(opt.seed);

  VertexSet vs;
  auto push_vertex = [&](const Eigen::VectorXd& s) {
    vs.columns.push_back(s);
    vs.fims.push_back(p.fims->synthesize(s));
  };

  // Initial vertex from the gradient at the uniform design, then random
  // vertices until the summed information matrix is positive definite.
  {
    const Eigen::VectorXd w_bar = p.uniform_design();
    const PointEval e = eval_point(w_bar, p);
    if (e.positive_definite) push_vertex(greedy_vertex_lp(e.grad, p.cells(), p.C));
    SymMatrix sum(p.n());
    for (const auto& f : vs.fims) sum += f;
    int tries = 0;
    while (!is_positive_definite(eigendecompose(sum))) {
      if (tries++ >= opt.max_random_vertices) {
        r.status = SolveStatus::InitFailure;
        r.w = w_bar;
        r.cpu_seconds = cpu_seconds_now() - t_start;
        return r;
      }
      push_vertex(random_vertex(rng, p.cells(), p.C));
      sum += vs.fims.back();
    }
  }

  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(vs.size(), 1.0 / vs.size());
  r.w = Eigen::VectorXd::Zero(p.m());
  for (int j = 0; j < vs.size(); ++j) r.w += lambda[j] * vs.columns[j];

  double delta = opt.delta0;

  for (int outer = 1; outer <= opt.max_outer; ++outer) {
    const PointEval ew = eval_point(r.w, p);
    if (!ew.positive_definite) {
      r.status = SolveStatus::NotPositiveDefinite;
      break;
    }

    // Column generation step; exact duplicates are not appended.
    const Eigen::VectorXd s_new = greedy_vertex_lp(ew.grad, p.cells(), p.C);
    bool duplicate = false;
    for (const auto& col : vs.columns) {
      if (col == s_new) {
        duplicate = true;
        break;
      }
    }
    Eigen::VectorXd lambda_init;
    if (!duplicate) {
      push_vertex(s_new);
      const int rr = vs.size();
      lambda_init.resize(rr);
      lambda_init.head(rr - 1) = lambda * (1.0 - 1.0 / rr);
      lambda_init[rr - 1] = 1.0 / rr;
    } else {
      lambda_init = lambda;
    }

    const TorsneyResult master =
        torsney_solve(vs.fims, p.q, lambda_init, delta, opt.torsney_max_iter);
    lambda = master.lambda;

    // Round tiny weights to zero and renormalize.
    const double thresh = 0.5 * std::sqrt(delta);
    for (int j = 0; j < lambda.size(); ++j)
      if (lambda[j] < thresh) lambda[j] = 0.0;
    if (lambda.sum() == 0.0) {
      int jmax = 0;
      master.lambda.maxCoeff(&jmax);
      lambda[jmax] = 1.0;
    }
    lambda /= lambda.sum();

    // Purge columns that lost their weight.
    {
      VertexSet kept;
      Eigen::VectorXd lkept(lambda.size());
      int cnt = 0;
      for (int j = 0; j < lambda.size(); ++j) {
        if (lambda[j] > 0.0) {
          kept.columns.push_back(std::move(vs.columns[j]));
          kept.fims.push_back(std::move(vs.fims[j]));
          lkept[cnt++] = lambda[j];
        }
      }
      vs = std::move(kept);
      lambda = lkept.head(cnt).eval();
    }

    r.w.setZero();
    for (int j = 0; j < vs.size(); ++j) r.w += lambda[j] * vs.columns[j];

    if (master.initial_satisfied) delta = std::max(delta / 10.0, opt.delta_floor);

    const PointEval e2 = eval_point(r.w, p);
    double res = kInf, eps = 0.0;
    if (e2.positive_definite) {
      res = residual_from_z(r.w, e2.z, p.alpha);
      eps = tolerance_from_z(e2.z, opt.tol_rel);
    }
    r.objective_value = e2.value;
    r.residual_value = res;
    r.tolerance_value = eps;
    r.iterations = outer;
    r.vertex_count = vs.size();
    r.trace.push_back({outer, cpu_seconds_now() - t_start, e2.value, res,
                       support_size(r.w), delta, 0.0});
    {
      double bound = 0.0;
      for (int i = 0; i < p.m(); ++i)
        bound = std::max({bound, -r.w[i], r.w[i] - 1.0});
      r.worst_bound_violation = std::max(r.worst_bound_violation, bound);
      r.worst_budget_error =
          std::max(r.worst_budget_error, std::abs(p.cells().integral(r.w) - p.C));
    }

    if (e2.positive_definite && res <= eps) {
      r.status = SolveStatus::Converged;
      break;
    }
  }
  r.cpu_seconds = cpu_seconds_now() - t_start;
  return r;
}

}  // namespace oed
