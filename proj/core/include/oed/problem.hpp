#ifndef OED_PROBLEM_HPP
#define OED_PROBLEM_HPP

#include <memory>

#include "oed/criteria.hpp"
#include "oed/fim_set.hpp"

namespace oed {

// Discrete design problem
//
//   minimize  a(w) = Phi_q(Lambda w) + (alpha/2) ||w||_M^2
//   over      0 <= w <= 1,  sum_i |E_i| w_i = C
//
// with Lambda w = sum_i Upsilon_i |E_i| w_i. The budget satisfies
// 0 < C < sum |E_i|.
struct ProblemSpec {
  std::shared_ptr<const FimSet> fims;
  double q = 0.0;
  double alpha = 0.0;
  double C = 0.0;

  int m() const { return fims->m(); }
  int n() const { return fims->n(); }
  const WeightedCells& cells() const { return fims->cells(); }

  Eigen::VectorXd uniform_design() const {
    return Eigen::VectorXd::Constant(m(), C / cells().total());
  }
};

// a(w); +infinity when Lambda w leaves the positive definite cone.
double objective(const Eigen::VectorXd& w, const ProblemSpec& p);

// A(w) = Lambda* grad Phi_q(Lambda w) + alpha w.
// Throws NotPositiveDefiniteError outside the cone.
Eigen::VectorXd objective_gradient(const Eigen::VectorXd& w, const ProblemSpec& p);

// One synthesize + eigendecomposition, shared by everything a solver needs
// at a point. grad/z are filled only when the matrix is positive definite.
struct PointEval {
  double value;          // a(w), +infinity off the cone
  bool positive_definite;
  Eigen::VectorXd grad;  // A(w)
  Eigen::VectorXd z;     // -Lambda* grad Phi_q(Lambda w) = alpha w - A(w)
};

PointEval eval_point(const Eigen::VectorXd& w, const ProblemSpec& p,
                     bool want_gradient = true);

}  // namespace oed

#endif
