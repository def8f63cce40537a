#include "oed/criteria.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "oed/errors.hpp"

namespace oed {

double eval_criterion(double q, const SpectralDecomposition& eig) {
  assert(q >= 0.0);
  if (!is_positive_definite(eig)) return std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(eig.eigenvalues.size());
  if (q == 0.0) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::log(eig.eigenvalues[i]);
    return -s / n;
  }
  double t = 0.0;  // tr I^{-q}
  for (int i = 0; i < n; ++i) t += std::pow(eig.eigenvalues[i], -q);
  return std::pow(t / n, 1.0 / q);
}

double eval_criterion(double q, const SymMatrix& a) {
  return eval_criterion(q, eigendecompose(a));
}

SymMatrix grad_criterion(double q, const SpectralDecomposition& eig) {
  assert(q >= 0.0);
  if (!is_positive_definite(eig)) throw NotPositiveDefiniteError();
  const int n = static_cast<int>(eig.eigenvalues.size());

  // Scalar map applied to the spectrum: G = Q diag(g(lambda)) Q^T with
  //   q > 0: g(l) = c * l^{-q-1}, c = -(1/n)^{1/q} (sum l^{-q})^{1/q-1}
  //   q = 0: g(l) = -(1/n) / l
  Eigen::VectorXd g(n);
  if (q == 0.0) {
    for (int i = 0; i < n; ++i) g[i] = -1.0 / (n * eig.eigenvalues[i]);
  } else {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += std::pow(eig.eigenvalues[i], -q);
    const double c = -std::pow(1.0 / n, 1.0 / q) * std::pow(t, 1.0 / q - 1.0);
    for (int i = 0; i < n; ++i) g[i] = c * std::pow(eig.eigenvalues[i], -q - 1.0);
  }
  Eigen::MatrixXd dense =
      eig.eigenvectors * g.asDiagonal() * eig.eigenvectors.transpose();
  return SymMatrix::from_dense(dense);
}

SymMatrix grad_criterion(double q, const SymMatrix& a) {
  return grad_criterion(q, eigendecompose(a));
}

}  // namespace oed
