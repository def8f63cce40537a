#include "oed/first_order.hpp"

#include <cmath>
#include <limits>

#include "oed/errors.hpp"
#include "oed/optimality.hpp"
#include "oed/projection.hpp"

namespace oed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ProjectionResult project(FeasibleSetKind kind, const Eigen::VectorXd& f,
                         const WeightedCells& cells, double C) {
  return kind == FeasibleSetKind::Box ? project_restricted_simplex(f, cells, C)
                                      : project_upper_simplex(f, cells, C);
}

double stop_residual(FeasibleSetKind kind, const Eigen::VectorXd& w,
                     const Eigen::VectorXd& z, double alpha) {
  return kind == FeasibleSetKind::Box ? residual_from_z(w, z, alpha)
                                      : upper_residual_from_z(w, z, alpha);
}

int support_size(const Eigen::VectorXd& w) {
  int nnz = 0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] != 0.0) ++nnz;
  return nnz;
}

void track_feasibility(SolveResult& r, const Eigen::VectorXd& w,
                       const WeightedCells& cells, double C, FeasibleSetKind kind) {
  double bound = 0.0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (kind == FeasibleSetKind::Box && -w[i] > bound) bound = -w[i];
    if (w[i] - 1.0 > bound) bound = w[i] - 1.0;
  }
  r.worst_bound_violation = std::max(r.worst_bound_violation, bound);
  r.worst_budget_error = std::max(r.worst_budget_error, std::abs(cells.integral(w) - C));
}

// Shared per-iteration bookkeeping: append the trace row for the already
// evaluated iterate and decide convergence.
bool log_and_check_stop(SolveResult& r, const ProblemSpec& p, FeasibleSetKind kind,
                        double tol_rel, int iter, double t_start, double gamma,
                        double theta, const PointEval& e) {
  double res = kInf, eps = 0.0;
  if (e.positive_definite) {
    res = stop_residual(kind, r.w, e.z, p.alpha);
    eps = tolerance_from_z(e.z, tol_rel);
  }
  r.objective_value = e.value;
  r.residual_value = res;
  r.tolerance_value = eps;
  r.trace.push_back({iter, cpu_seconds_now() - t_start, e.value, res,
                     support_size(r.w), gamma, theta});
  return e.positive_definite && res <= eps;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::IterationLimit: return "cap";
    case SolveStatus::LineSearchFailure: return "line-search-failure";
    case SolveStatus::NotPositiveDefinite: return "not-positive-definite";
    case SolveStatus::InitFailure: return "init-failure";
    case SolveStatus::InnerSolveFailure: return "inner-solve-failure";
  }
  return "unknown";
}

PgmaInit pgma_initialize(const ProblemSpec& p, const Eigen::VectorXd& w0, double kappa,
                         FeasibleSetKind feasible) {
  PgmaInit init;
  const PointEval e0 = eval_point(w0, p);
  if (!e0.positive_definite) throw NotPositiveDefiniteError("pgma init point");

  int k = 0;
  for (int i = 1; i < static_cast<int>(w0.size()); ++i)
    if (e0.grad[i] > e0.grad[k]) k = i;  // strict: ties keep the lowest index

  Eigen::VectorXd bumped = w0;
  bumped[k] += 2.0;
  init.w_probe = project(feasible, bumped, p.cells(), p.C).v;

  const double dist = p.cells().norm(init.w_probe - w0);
  if (dist == 0.0) {
    init.degenerate = true;
    return init;
  }
  const PointEval e2 = eval_point(init.w_probe, p);
  if (!e2.positive_definite) {
    init.degenerate = true;
    return init;
  }
  const double denom = p.cells().norm(e2.grad - e0.grad);
  const double g = kappa * dist / denom;
  if (!(g > 0.0) || !std::isfinite(g)) {
    init.degenerate = true;
    return init;
  }
  init.gamma0 = g;
  return init;
}

SolveResult fista_solve(const ProblemSpec& p, const Eigen::VectorXd& w0,
                        const FistaOptions& opt) {
  const double t_start = cpu_seconds_now();
  SolveResult r;
  r.w = w0;

  {
    const PointEval e0 = eval_point(w0, p, /*want_gradient=*/false);
    if (!e0.positive_definite) {
      r.status = SolveStatus::InitFailure;
      r.objective_value = kInf;
      return r;
    }
  }

  double gamma = opt.gamma0;
  if (!(gamma > 0.0)) gamma = pgma_initialize(p, w0, opt.kappa_init).gamma0;
  r.max_gamma = gamma;

  Eigen::VectorXd w_prev = w0;
  double t = 0.0;  // t_1 = 0 makes the first step unextrapolated

  for (int k = 1; k <= opt.max_iter; ++k) {
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    double theta = std::max(0.0, (t - 1.0) / t_next);

    // Extrapolate; halve theta if the trial point leaves the PD cone.
    Eigen::VectorXd v = r.w + theta * (r.w - w_prev);
    PointEval ev = eval_point(v, p);
    int shrink = 0;
    while (!ev.positive_definite && shrink < opt.max_backtracks) {
      theta *= 0.5;
      v = r.w + theta * (r.w - w_prev);
      ev = eval_point(v, p);
      ++shrink;
    }
    if (!ev.positive_definite) {
      r.status = SolveStatus::NotPositiveDefinite;
      r.iterations = k - 1;
      r.cpu_seconds = cpu_seconds_now() - t_start;
      return r;
    }

    // Backtrack gamma until the quadratic upper bound holds at the
    // projected point. The tiny slack absorbs cancellation noise when
    // y is already nearly v.
    bool accepted = false;
    Eigen::VectorXd y;
    double gamma_bar = gamma;
    for (int i = 0; i <= opt.max_backtracks; ++i) {
      gamma_bar = gamma * std::pow(opt.eta, i);
      y = project(FeasibleSetKind::Box, v - gamma_bar * ev.grad, p.cells(), p.C).v;
      const PointEval ey = eval_point(y, p, /*want_gradient=*/false);
      const Eigen::VectorXd d = y - v;
      const double rhs = ev.value + p.cells().dot(ev.grad, d) +
                         p.cells().dot(d, d) / (2.0 * gamma_bar) +
                         1e-12 * std::abs(ev.value);
      if (ey.value <= rhs) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      r.status = SolveStatus::LineSearchFailure;
      r.iterations = k - 1;
      r.cpu_seconds = cpu_seconds_now() - t_start;
      return r;
    }

    gamma = gamma_bar;
    w_prev = r.w;
    r.w = y;
    r.final_gamma = gamma;
    r.final_theta = theta;
    r.iterations = k;
    t = t_next;
    track_feasibility(r, r.w, p.cells(), p.C, FeasibleSetKind::Box);

    if (log_and_check_stop(r, p, FeasibleSetKind::Box, opt.tol_rel, k, t_start, gamma,
                           theta, eval_point(r.w, p))) {
      r.status = SolveStatus::Converged;
      break;
    }
  }
  r.cpu_seconds = cpu_seconds_now() - t_start;
  return r;
}

SolveResult pgma_solve(const ProblemSpec& p, const Eigen::VectorXd& w0,
                       const PgmaOptions& opt) {
  const double t_start = cpu_seconds_now();
  SolveResult r;
  r.w = w0;

  const PointEval e0 = eval_point(w0, p);
  if (!e0.positive_definite) {
    r.status = SolveStatus::InitFailure;
    r.objective_value = kInf;
    return r;
  }

  double gamma = opt.gamma0;
  if (!(gamma > 0.0)) gamma = pgma_initialize(p, w0, opt.kappa, opt.feasible).gamma0;
  r.max_gamma = gamma;

  Eigen::VectorXd w_prev = w0;
  Eigen::VectorXd v_prev = w0;        // v^(0) = w^(0)
  Eigen::VectorXd grad_v_prev = e0.grad;
  double theta = 1.0;

  const double tau = opt.tau;
  const double rhs_coeff = opt.kappa * (1.0 - 1.0 / tau);

  for (int k = 1; k <= opt.max_iter; ++k) {
    const double cap = (gamma <= 0.5 * opt.gamma_max)
                           ? std::sqrt((1.0 + tau * theta) / (2.0 * tau - 1.0))
                           : 1.0;
    bool accepted = false;
    bool pd_seen = false;
    double theta_bar = 0.0, gamma_bar = 0.0;
    Eigen::VectorXd v;
    PointEval ev, e_next;
    ProjectionResult step;
    for (int i = 0; i <= opt.max_line_search; ++i) {
      theta_bar = cap * std::pow(opt.rho, i);
      v = r.w + theta_bar * (r.w - w_prev);
      ev = eval_point(v, p);
      if (!ev.positive_definite) continue;  // shrink further
      pd_seen = true;
      gamma_bar = std::min(tau * theta_bar * gamma, opt.gamma_max);
      const double lhs = gamma_bar * p.cells().norm(ev.grad - grad_v_prev);
      const double rhs = rhs_coeff * p.cells().norm(v - v_prev);
      if (lhs > rhs + 1e-14 * (std::abs(rhs) + 1e-300)) continue;
      // The projected candidate must stay inside the PD cone; otherwise
      // keep shrinking so the next iteration has a usable gradient.
      step = project(opt.feasible, r.w - gamma_bar * ev.grad, p.cells(), p.C);
      e_next = eval_point(step.v, p);
      if (!e_next.positive_definite) continue;
      accepted = true;
      if (opt.record_certificates) r.certificates.emplace_back(lhs, rhs);
      break;
    }
    if (!accepted) {
      r.status = pd_seen ? SolveStatus::LineSearchFailure : SolveStatus::NotPositiveDefinite;
      r.iterations = k - 1;
      r.cpu_seconds = cpu_seconds_now() - t_start;
      return r;
    }

    theta = theta_bar;
    gamma = gamma_bar;
    r.max_gamma = std::max(r.max_gamma, gamma);

    w_prev = r.w;
    r.w = step.v;
    r.last_projection_zeta = step.zeta;
    v_prev = v;
    grad_v_prev = ev.grad;
    r.final_gamma = gamma;
    r.final_theta = theta;
    r.iterations = k;
    track_feasibility(r, r.w, p.cells(), p.C, opt.feasible);

    if (log_and_check_stop(r, p, opt.feasible, opt.tol_rel, k, t_start, gamma, theta,
                           e_next)) {
      r.status = SolveStatus::Converged;
      break;
    }
  }
  r.cpu_seconds = cpu_seconds_now() - t_start;
  return r;
}

}  // namespace oed
