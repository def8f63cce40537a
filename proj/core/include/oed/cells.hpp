#ifndef OED_CELLS_HPP
#define OED_CELLS_HPP

#include <Eigen/Dense>
#include <cassert>

namespace oed {

// Volumes |E_i| of the m cells of a partition of the design domain.
// All volumes are strictly positive. The weighted inner product
// <u, v>_M = sum_i |E_i| u_i v_i runs everywhere through the solvers.
struct WeightedCells {
  Eigen::VectorXd volumes;

  WeightedCells() = default;
  explicit WeightedCells(Eigen::VectorXd v) : volumes(std::move(v)) {
    assert((volumes.array() > 0).all());
  }

  static WeightedCells uniform(int m, double volume) {
    return WeightedCells(Eigen::VectorXd::Constant(m, volume));
  }

  int size() const { return static_cast<int>(volumes.size()); }
  double total() const { return volumes.sum(); }

  double dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return (volumes.array() * u.array() * v.array()).sum();
  }

  double norm(const Eigen::VectorXd& u) const { return std::sqrt(dot(u, u)); }

  // Integral of a design over the domain, sum_i |E_i| w_i.
  double integral(const Eigen::VectorXd& w) const {
    return (volumes.array() * w.array()).sum();
  }
};

}  // namespace oed

#endif
