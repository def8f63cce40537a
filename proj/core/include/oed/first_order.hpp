#ifndef OED_FIRST_ORDER_HPP
#define OED_FIRST_ORDER_HPP

#include <utility>

#include "oed/problem.hpp"
#include "oed/trace.hpp"

namespace oed {

enum class SolveStatus {
  Converged,
  IterationLimit,
  LineSearchFailure,
  NotPositiveDefinite,
  InitFailure,
  InnerSolveFailure,
};

const char* to_string(SolveStatus s);

// Which feasible set the projected steps use. Box is the design set
// {0 <= w <= 1, integral = C}; UpperOnly drops the lower bound (used by the
// primal-dual active set strategy, whose inner iterates may go negative).
enum class FeasibleSetKind { Box, UpperOnly };

struct SolveResult {
  Eigen::VectorXd w;
  SolveStatus status = SolveStatus::IterationLimit;
  int iterations = 0;
  Trace trace;
  double objective_value = 0.0;
  double residual_value = 0.0;
  double tolerance_value = 0.0;
  double final_gamma = 0.0;
  double final_theta = 0.0;
  double max_gamma = 0.0;
  // Worst feasibility deviation over all logged iterates; box violations
  // are exact zeros by construction of the projection.
  double worst_bound_violation = 0.0;
  double worst_budget_error = 0.0;
  double last_projection_zeta = 0.0;
  double cpu_seconds = 0.0;
  // Accepted line-search pairs (lhs, rhs) when recording is enabled.
  std::vector<std::pair<double, double>> certificates;
};

struct FistaOptions {
  int max_iter = 5000;
  double tol_rel = 1e-10;
  double eta = 0.5;          // backtracking shrink factor
  double gamma0 = 0.0;       // <= 0 requests the secant initialization
  double kappa_init = 0.41;  // kappa for the secant initialization
  int max_backtracks = 60;
};

struct PgmaOptions {
  int max_iter = 50000;
  double tol_rel = 1e-10;
  double kappa = 0.41;
  double rho = 0.7;
  double tau = 2.0;
  double gamma_max = 1e5;
  double gamma0 = 0.0;  // <= 0 requests the secant initialization
  int max_line_search = 60;
  bool record_certificates = false;
  FeasibleSetKind feasible = FeasibleSetKind::Box;
};

// Probe construction for the initial step size: bump the coordinate with the
// largest gradient entry (lowest index on ties) by 2, project back, and take
// the secant quotient gamma0 = kappa ||w_probe - w0||_M / ||A(w_probe) - A(w0)||_M.
// Degenerate probes (projection returns w0, or a flat gradient) fall back to
// gamma0 = 1.
struct PgmaInit {
  Eigen::VectorXd w_probe;
  double gamma0 = 1.0;
  bool degenerate = false;
};

PgmaInit pgma_initialize(const ProblemSpec& p, const Eigen::VectorXd& w0,
                         double kappa = 0.41,
                         FeasibleSetKind feasible = FeasibleSetKind::Box);

// Accelerated projected gradient with backtracking (monotone step sizes,
// t-sequence extrapolation starting unextrapolated).
SolveResult fista_solve(const ProblemSpec& p, const Eigen::VectorXd& w0,
                        const FistaOptions& opt = {});

// Extrapolated proximal gradient with the adaptive two-sided line search;
// step sizes may grow, capped at gamma_max.
SolveResult pgma_solve(const ProblemSpec& p, const Eigen::VectorXd& w0,
                       const PgmaOptions& opt = {});

}  // namespace oed

#endif
