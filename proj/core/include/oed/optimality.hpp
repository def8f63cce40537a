#ifndef OED_OPTIMALITY_HPP
#define OED_OPTIMALITY_HPP

#include "oed/problem.hpp"

namespace oed {

// Partition of {0..m-1} by the exact values of a feasible design:
// J0 = {w_i = 0}, J01 = {0 < w_i < 1}, J1 = {w_i = 1}. Comparisons are
// exact: projections produce exact 0 and 1 entries.
struct IndexClassification {
  std::vector<int> J0, J01, J1;
};

IndexClassification classify(const Eigen::VectorXd& w);

// First-order optimality residual. With z = -Lambda* grad Phi_q(Lambda w),
//
//   e(w) = 1/2 max{ sup_{J0} z - inf_{J01}(z - alpha w),
//                   sup_{J0} z - inf_{J1}(z - alpha),
//                   sup_{J01}(z - alpha w) - inf_{J01}(z - alpha w),
//                   sup_{J01}(z - alpha w) - inf_{J1}(z - alpha) }
//
// where terms touching an empty set (sup = -inf, inf = +inf) are dropped.
// A multiplier zeta certifying approximate optimality exists precisely when
// e(w) is at most the tolerance. The value may be negative.
double residual(const Eigen::VectorXd& w, const ProblemSpec& p);

// epsilon(w) = rel * (max_i z_i - min_i z_i), over all m coordinates.
double relative_tolerance(const Eigen::VectorXd& w, const ProblemSpec& p,
                          double rel = 1e-10);

// Same two quantities from an already computed z (one adjoint saved).
double residual_from_z(const Eigen::VectorXd& w, const Eigen::VectorXd& z, double alpha);
double tolerance_from_z(const Eigen::VectorXd& z, double rel);

// Residual for the upper-bounded set {w <= 1, integral = C} (no lower
// bound): uncapped coordinates {w_i < 1} must share the value z_i - alpha w_i
// up to the tolerance, capped ones satisfy the inequality side.
double upper_residual_from_z(const Eigen::VectorXd& w, const Eigen::VectorXd& z,
                             double alpha);

// For alpha > 0 the solution is the unique fixed point of
//   w = P(-(1/alpha) Lambda* grad Phi_q(Lambda w))
// with P the restricted simplex projection; returns the sup-norm deviation.
// Throws AlphaZeroError when alpha = 0.
double check_regularized_fixed_point(const Eigen::VectorXd& w, const ProblemSpec& p);

}  // namespace oed

#endif
