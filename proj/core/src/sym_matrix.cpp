#include "oed/sym_matrix.hpp"

#include <cassert>
#include <cmath>

namespace oed {

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& a) {
  assert(a.rows() == a.cols());
  SymMatrix s(static_cast<int>(a.rows()));
  for (int i = 0; i < s.n_; ++i)
    for (int j = i; j < s.n_; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

Eigen::MatrixXd SymMatrix::to_dense() const {
  Eigen::MatrixXd a(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) a(i, j) = a(j, i) = (*this)(i, j);
  return a;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  assert(n_ == other.n_);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double c) {
  for (double& x : a_) x *= c;
  return *this;
}

void SymMatrix::axpy(double c, const SymMatrix& other) {
  assert(n_ == other.n_);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += c * other.a_[k];
}

double SymMatrix::frobenius_dot(const SymMatrix& other) const {
  assert(n_ == other.n_);
  double diag = 0.0, off = 0.0;
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i) {
    diag += a_[k] * other.a_[k];
    ++k;
    for (int j = i + 1; j < n_; ++j, ++k) off += a_[k] * other.a_[k];
  }
  return diag + 2.0 * off;
}

SpectralDecomposition eigendecompose(const SymMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.to_dense());
  // Eigen sorts ascending; flip to descending.
  const int n = a.dim();
  SpectralDecomposition eig;
  eig.eigenvalues = solver.eigenvalues().reverse();
  eig.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) eig.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  return eig;
}

double pd_threshold(const SpectralDecomposition& eig) {
  const double lmax = eig.eigenvalues.size() > 0 ? eig.eigenvalues[0] : 0.0;
  return 1e-12 * std::max(1.0, std::abs(lmax));
}

bool is_positive_definite(const SpectralDecomposition& eig) {
  if (eig.eigenvalues.size() == 0) return false;
  return eig.eigenvalues[eig.eigenvalues.size() - 1] > pd_threshold(eig);
}

}  // namespace oed
