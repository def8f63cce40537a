#include "oed/problem.hpp"

#include <limits>

#include "oed/errors.hpp"

namespace oed {

double objective(const Eigen::VectorXd& w, const ProblemSpec& p) {
  const double crit = eval_criterion(p.q, p.fims->synthesize(w));
  if (crit == std::numeric_limits<double>::infinity()) return crit;
  const double reg = p.alpha > 0.0 ? 0.5 * p.alpha * p.cells().dot(w, w) : 0.0;
  return crit + reg;
}

Eigen::VectorXd objective_gradient(const Eigen::VectorXd& w, const ProblemSpec& p) {
  const SymMatrix g = grad_criterion(p.q, p.fims->synthesize(w));
  Eigen::VectorXd out = p.fims->adjoint(g);
  if (p.alpha > 0.0) out += p.alpha * w;
  return out;
}

PointEval eval_point(const Eigen::VectorXd& w, const ProblemSpec& p, bool want_gradient) {
  PointEval e;
  const SpectralDecomposition eig = eigendecompose(p.fims->synthesize(w));
  e.positive_definite = is_positive_definite(eig);
  if (!e.positive_definite) {
    e.value = std::numeric_limits<double>::infinity();
    return e;
  }
  e.value = eval_criterion(p.q, eig);
  if (p.alpha > 0.0) e.value += 0.5 * p.alpha * p.cells().dot(w, w);
  if (want_gradient) {
    e.z = -p.fims->adjoint(grad_criterion(p.q, eig));
    e.grad = -e.z;
    if (p.alpha > 0.0) e.grad += p.alpha * w;
  }
  return e;
}

}  // namespace oed
