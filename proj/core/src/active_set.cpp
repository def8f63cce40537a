#include "oed/active_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "oed/errors.hpp"
#include "oed/optimality.hpp"
#include "oed/simplicial.hpp"

namespace oed {

namespace {

std::vector<int> zero_set(const Eigen::VectorXd& w) {
  std::vector<int> z;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] == 0.0) z.push_back(i);
  return z;
}

std::vector<int> complement_of(const std::vector<int>& active, int m) {
  std::vector<bool> mask(m, false);
  for (int i : active) mask[i] = true;
  std::vector<int> out;
  out.reserve(m - static_cast<int>(active.size()));
  for (int i = 0; i < m; ++i)
    if (!mask[i]) out.push_back(i);
  return out;
}

std::vector<int> merge_minus(const std::vector<int>& zeros,
                             const std::vector<int>& active,
                             const std::vector<int>& freed) {
  std::vector<int> u;
  std::set_union(zeros.begin(), zeros.end(), active.begin(), active.end(),
                 std::back_inserter(u));
  std::vector<int> out;
  std::set_difference(u.begin(), u.end(), freed.begin(), freed.end(),
                      std::back_inserter(out));
  return out;
}

double median_of(std::vector<double> v) {
  const int k = static_cast<int>(v.size());
  const int mid = k / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double hi = v[mid];
  if (k % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

int support_size(const Eigen::VectorXd& w) {
  int nnz = 0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] != 0.0) ++nnz;
  return nnz;
}

}  // namespace

std::vector<int> sdm_update(const std::vector<int>& active, const Eigen::VectorXd& w,
                            const Eigen::VectorXd& score) {
  const std::vector<int> zeros = zero_set(w);
  if (active.empty()) return zeros;
  int s = active.front();
  for (int i : active)
    if (score[i] < score[s]) s = i;
  return merge_minus(zeros, active, {s});
}

std::vector<int> sdmh_update(const std::vector<int>& active, const Eigen::VectorXd& w,
                             const Eigen::VectorXd& score, const GridInfo& grid) {
  const std::vector<int> zeros = zero_set(w);
  if (active.empty()) return zeros;
  std::vector<bool> in_active(score.size(), false);
  for (int i : active) in_active[i] = true;
  std::vector<int> freed;
  for (int i : active) {
    bool weak_min = true;
    for (int j : grid.neighbors(i)) {
      if (in_active[j] && score[i] > score[j]) {
        weak_min = false;
        break;
      }
    }
    if (weak_min) freed.push_back(i);
  }
  return merge_minus(zeros, active, freed);
}

std::pair<std::vector<int>, double> pdsas_update(const Eigen::VectorXd& nu,
                                                 const Eigen::VectorXd& w, double c,
                                                 const WeightedCells& cells, double C) {
  const int m = static_cast<int>(nu.size());
  for (int decade = 0; decade <= 50; ++decade) {
    std::vector<int> active;
    double inactive_volume = 0.0;
    for (int i = 0; i < m; ++i) {
      if (nu[i] + c * w[i] < 0.0)
        active.push_back(i);
      else
        inactive_volume += cells.volumes[i];
    }
    if (inactive_volume >= C) return {std::move(active), c};
    c *= 10.0;
  }
  throw EscalationStallError("active set stays budget-infeasible after 50 decades of c");
}

GassResult gass_solve(const ProblemSpec& p, const GassOptions& opt) {
  if (opt.variant == GassVariant::Sdmh && !p.fims->grid())
    throw NoGridError("SDMH needs grid metadata for the neighbor scan");

  const double t_start = cpu_seconds_now();
  const int m = p.m();
  GassResult r;

  Eigen::VectorXd w = p.uniform_design();
  PointEval ew = eval_point(w, p);
  if (!ew.positive_definite)
    throw NotPositiveDefiniteError("information matrix at the uniform start");

  std::vector<int> active;
  if (opt.variant != GassVariant::Pdsas && !opt.cold_start) {
    // Seed the working set from the greedy vertex, then widen it with
    // random vertices until the pooled information is positive definite, so
    // the first inner problem is solvable at all.
    const Eigen::VectorXd s = greedy_vertex_lp(ew.grad, p.cells(), p.C);
    std::vector<char> keep(m, 0);
    for (int i = 0; i < m; ++i) keep[i] = s[i] != 0.0;
    SymMatrix pooled = p.fims->synthesize(s);
    SplitMix64 rng(opt.seed);
    int tries = 0;
    while (!is_positive_definite(eigendecompose(pooled))) {
      if (tries++ >= 50) {
        r.status = SolveStatus::InitFailure;
        r.w = std::move(w);
        r.cpu_seconds = cpu_seconds_now() - t_start;
        return r;
      }
      const Eigen::VectorXd extra = random_vertex(rng, p.cells(), p.C);
      pooled += p.fims->synthesize(extra);
      for (int i = 0; i < m; ++i)
        if (extra[i] != 0.0) keep[i] = 1;
    }
    for (int i = 0; i < m; ++i)
      if (!keep[i]) active.push_back(i);
  } else {
    active = zero_set(w);  // empty at the uniform start
  }

  double c = opt.c0;
  double zeta = 0.0;
  if (opt.variant == GassVariant::Pdsas) {
    // Initial multiplier estimate: the dual value where the best-first cell
    // ranking accumulates ten budgets' worth of volume. One budget is too
    // tight (the ranking at the uniform point misplaces part of the final
    // support and the first working set must cover it); half the grid makes
    // the first inner problem enormous. Ten budgets keeps the set small with
    // margin for the ranking error. On coarse grids the cutoff can land after
    // a handful of cells whose pooled information is rank deficient, so the
    // scan also runs until the freed prefix is positive definite; otherwise
    // the first inner problem has no finite point.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = ew.z[a] - p.alpha * w[a], db = ew.z[b] - p.alpha * w[b];
      if (da != db) return da > db;
      return a < b;
    });
    double vol = 0.0;
    SymMatrix pooled(p.n());
    zeta = ew.z[order.back()] - p.alpha * w[order.back()];
    for (int i : order) {
      vol += p.cells().volumes[i];
      pooled += p.fims->fim(i);
      if (vol >= 10.0 * p.C &&
          is_positive_definite(eigendecompose(pooled))) {
        zeta = ew.z[i] - p.alpha * w[i];
        break;
      }
    }
  }

  PgmaOptions popts = opt.inner;
  popts.feasible = (opt.variant == GassVariant::Pdsas) ? FeasibleSetKind::UpperOnly
                                                       : FeasibleSetKind::Box;

  for (int outer = 1; outer <= opt.max_outer; ++outer) {
    // Outer problem: pick the next active set from the current point.
    switch (opt.variant) {
      case GassVariant::Sdm:
        active = sdm_update(active, w, ew.grad);
        break;
      case GassVariant::Sdmh:
        active = sdmh_update(active, w, ew.grad, *p.fims->grid());
        break;
      case GassVariant::Pdsas: {
        Eigen::VectorXd nu(m);
        for (int i = 0; i < m; ++i)
          nu[i] = std::min(ew.z[i] - p.alpha * w[i] - zeta, 0.0);
        auto [a, c_new] = pdsas_update(nu, w, c, p.cells(), p.C);
        active = std::move(a);
        c = c_new;
        break;
      }
    }

    // Inner problem on the free coordinates.
    const std::vector<int> inactive = complement_of(active, m);
    auto sub_fims = std::make_shared<FimSet>(p.fims->subset(inactive));
    ProblemSpec sub{sub_fims, p.q, p.alpha, p.C};

    // PDSAS restarts from the constant feasible vector every time; the
    // other variants do so only before a previous solution exists.
    Eigen::VectorXd w0(inactive.size());
    if (opt.variant == GassVariant::Pdsas || outer == 1) {
      w0.setConstant(p.C / sub.cells().total());
    } else {
      for (std::size_t j = 0; j < inactive.size(); ++j) w0[j] = w[inactive[j]];
    }

    SolveResult inner;
    try {
      inner = pgma_solve(sub, w0, popts);
    } catch (const NotPositiveDefiniteError&) {
      r.status = SolveStatus::InnerSolveFailure;
      break;
    }
    if (inner.status == SolveStatus::NotPositiveDefinite ||
        inner.status == SolveStatus::LineSearchFailure ||
        inner.status == SolveStatus::InitFailure) {
      r.status = SolveStatus::InnerSolveFailure;
      break;
    }

    w.setZero();
    for (std::size_t j = 0; j < inactive.size(); ++j) w[inactive[j]] = inner.w[j];

    ew = eval_point(w, p);
    if (!ew.positive_definite) {
      r.status = SolveStatus::InnerSolveFailure;
      break;
    }
    const double res = residual_from_z(w, ew.z, p.alpha);
    const double eps = tolerance_from_z(ew.z, opt.tol_rel);

    if (opt.variant == GassVariant::Pdsas) {
      std::vector<double> duals;
      for (int i = 0; i < m; ++i)
        if (w[i] > 0.0 && w[i] < 1.0) duals.push_back(ew.z[i] - p.alpha * w[i]);
      if (!duals.empty())
        zeta = median_of(std::move(duals));
      else if (inner.final_gamma > 0.0)
        zeta = inner.last_projection_zeta / inner.final_gamma;
    }

    r.iterations = outer;
    r.objective_value = ew.value;
    r.residual_value = res;
    r.tolerance_value = eps;
    r.final_gamma = inner.final_gamma;
    r.final_theta = inner.final_theta;
    r.max_gamma = std::max(r.max_gamma, inner.max_gamma);
    r.last_projection_zeta = inner.last_projection_zeta;
    r.active_sizes.push_back(static_cast<int>(active.size()));
    r.trace.push_back({outer, cpu_seconds_now() - t_start, ew.value, res,
                       support_size(w), inner.final_gamma, inner.final_theta});
    {
      double bound = 0.0;
      for (int i = 0; i < m; ++i) bound = std::max({bound, -w[i], w[i] - 1.0});
      r.worst_bound_violation = std::max(r.worst_bound_violation, bound);
      r.worst_budget_error =
          std::max(r.worst_budget_error, std::abs(p.cells().integral(w) - p.C));
    }

    const bool in_outer_box =
        opt.variant != GassVariant::Pdsas || (w.array() >= 0.0).all();
    if (in_outer_box && res <= eps) {
      r.status = SolveStatus::Converged;
      break;
    }
  }

  r.w = std::move(w);
  r.cpu_seconds = cpu_seconds_now() - t_start;
  return r;
}

}  // namespace oed
