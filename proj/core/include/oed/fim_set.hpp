#ifndef OED_FIM_SET_HPP
#define OED_FIM_SET_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oed/cells.hpp"
#include "oed/sym_matrix.hpp"

namespace oed {

// Regular grid metadata for cell partitions that come from a tensor grid.
// Linear cell index = i_0 + counts[0]*(i_1 + counts[1]*(i_2 + ...)), first
// axis fastest. Optional: purely synthetic problems carry none.
struct GridInfo {
  std::vector<std::uint64_t> counts;
  std::vector<double> axis_min;
  std::vector<double> axis_max;

  int dims() const { return static_cast<int>(counts.size()); }
  std::uint64_t cell_count() const {
    std::uint64_t n = 1;
    for (auto c : counts) n *= c;
    return n;
  }
  // Face-adjacent neighbors (+-1 along each axis) of a linear index.
  std::vector<int> neighbors(int linear) const;
};

// Collection of m elemental Fisher information matrices Upsilon_i (one per
// cell), stored contiguously in packed upper-triangle rows, plus the cell
// volumes. The two accumulation kernels below are the per-iteration cost of
// every solver, so they run over the packed rows directly.
class FimSet {
 public:
  FimSet() = default;
  FimSet(int m, int n, WeightedCells cells);

  int m() const { return m_; }
  int n() const { return n_; }
  std::size_t row_len() const { return SymMatrix::packed_size(n_); }
  const WeightedCells& cells() const { return cells_; }

  std::span<double> fim_row(int i) {
    return {data_.data() + static_cast<std::size_t>(i) * row_len(), row_len()};
  }
  std::span<const double> fim_row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * row_len(), row_len()};
  }
  SymMatrix fim(int i) const;
  void set_fim(int i, const SymMatrix& u);

  const std::vector<double>& raw() const { return data_; }

  std::optional<GridInfo>& grid() { return grid_; }
  const std::optional<GridInfo>& grid() const { return grid_; }

  // Lambda w = sum_i Upsilon_i |E_i| w_i. Zero weights are skipped, so the
  // cost is proportional to the support of w.
  SymMatrix synthesize(const Eigen::VectorXd& w) const;

  // Adjoint of the same map: out_i = P : Upsilon_i (Frobenius pairing).
  Eigen::VectorXd adjoint(const SymMatrix& p) const;

  // Sub-collection holding the given cells (ascending original order kept).
  FimSet subset(std::span<const int> keep) const;

  // Checks every stored matrix for negative eigenvalues (deferred validation
  // of cache files; not run on load).
  void validate_psd() const;

 private:
  int m_ = 0;
  int n_ = 0;
  WeightedCells cells_;
  std::vector<double> data_;
  std::optional<GridInfo> grid_;
};

// Binary cache format: magic "OEDF", version u32, m u64, n u32, d u32 (0 when
// no grid), then d axis records (count u64, min f64, max f64), then m cell
// records (volume f64, n(n+1)/2 packed f64). Everything little-endian.
void save_fimset(const FimSet& fs, const std::string& path);
FimSet load_fimset(const std::string& path);

}  // namespace oed

#endif
