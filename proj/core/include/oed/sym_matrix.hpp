#ifndef OED_SYM_MATRIX_HPP
#define OED_SYM_MATRIX_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace oed {

// Symmetric n x n matrix stored as the packed upper triangle, row major:
// (0,0),(0,1),...,(0,n-1),(1,1),...,(n-1,n-1). This is also the on-disk
// layout of FIM cache records, and the layout the accumulation kernels
// (synthesize/adjoint) iterate over.
class SymMatrix {
 public:
  SymMatrix() : n_(0) {}
  explicit SymMatrix(int n) : n_(n), a_(packed_size(n), 0.0) {}

  static std::size_t packed_size(int n) {
    return static_cast<std::size_t>(n) * (n + 1) / 2;
  }

  static SymMatrix identity(int n) {
    SymMatrix s(n);
    for (int i = 0; i < n; ++i) s(i, i) = 1.0;
    return s;
  }

  static SymMatrix diagonal(const Eigen::VectorXd& d) {
    SymMatrix s(static_cast<int>(d.size()));
    for (int i = 0; i < s.n_; ++i) s(i, i) = d[i];
    return s;
  }

  static SymMatrix from_dense(const Eigen::MatrixXd& a);

  int dim() const { return n_; }
  const std::vector<double>& packed() const { return a_; }
  std::vector<double>& packed() { return a_; }

  double& operator()(int i, int j) { return a_[offset(i, j)]; }
  double operator()(int i, int j) const { return a_[offset(i, j)]; }

  Eigen::MatrixXd to_dense() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator*=(double c);

  // this += c * other
  void axpy(double c, const SymMatrix& other);

  // Frobenius inner product <this, other> (off-diagonals counted twice).
  double frobenius_dot(const SymMatrix& other) const;

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += a_[offset(i, i)];
    return t;
  }

  void set_zero() { a_.assign(a_.size(), 0.0); }

 private:
  std::size_t offset(int i, int j) const {
    if (i > j) std::swap(i, j);
    // row i starts after rows 0..i-1 holding n, n-1, ..., n-i+1 entries
    return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
           static_cast<std::size_t>(j - i);
  }

  int n_;
  std::vector<double> a_;
};

// Eigendecomposition A = Q diag(lambda) Q^T with eigenvalues sorted
// descending and orthonormal eigenvector columns.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // descending
  Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalues[k]
};

SpectralDecomposition eigendecompose(const SymMatrix& a);

// Threshold below which an eigenvalue counts as numerically nonpositive:
// 1e-12 * max(1, |lambda_max|).
double pd_threshold(const SpectralDecomposition& eig);

bool is_positive_definite(const SpectralDecomposition& eig);

}  // namespace oed

#endif
