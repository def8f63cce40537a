#pragma once

// Shared fixtures for the test binaries: random SPD matrices, the two-cell
// toy instance, and slow reference implementations of the simplex projection
// used to cross-check the production code.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "oed/cells.hpp"
#include "oed/fim_set.hpp"
#include "oed/problem.hpp"
#include "oed/rng.hpp"
#include "oed/sym_matrix.hpp"
#include "oed/synthetic.hpp"

namespace oed::testing {

// Q diag(lambda) Q^T with a Haar-ish orthogonal Q and eigenvalues drawn from
// [lo, hi].
inline SymMatrix random_spd(SplitMix64& rng, int n, double lo = 0.1,
                            double hi = 10.0) {
  Eigen::MatrixXd raw(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) raw(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd lam(n);
  for (int i = 0; i < n; ++i) lam(i) = rng.uniform(lo, hi);
  Eigen::MatrixXd dense = q * lam.asDiagonal() * q.transpose();
  return SymMatrix::from_dense(dense);
}

inline Eigen::VectorXd random_vector(SplitMix64& rng, int m, double lo,
                                     double hi) {
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

// Two scalar cells with information values 1 and 2, unit volumes, budget 1.
// The optimum of the log criterion puts all mass on the second cell and the
// optimal value is -ln 2.  Carries a 1-D grid so the hierarchical active-set
// variant can run on it.
inline std::shared_ptr<FimSet> toy_fimset() {
  auto fims = std::make_shared<FimSet>(2, 1, WeightedCells::uniform(2, 1.0));
  SymMatrix a(1);
  a(0, 0) = 1.0;
  fims->set_fim(0, a);
  a(0, 0) = 2.0;
  fims->set_fim(1, a);
  fims->grid() = GridInfo{{2}, {0.0}, {2.0}};
  return fims;
}

inline ProblemSpec toy_problem(double q = 0.0, double alpha = 0.0,
                               double budget = 1.0) {
  return ProblemSpec{toy_fimset(), q, alpha, budget};
}

// Reference projection onto {0 <= v <= 1, sum |E_i| v_i = C} by bisecting on
// the shift: W(zeta) = sum |E_i| clamp(f_i - zeta, 0, 1) is non-increasing.
inline Eigen::VectorXd bisect_restricted(const Eigen::VectorXd& f,
                                         const WeightedCells& cells, double c,
                                         int steps = 200) {
  const int m = static_cast<int>(f.size());
  auto mass = [&](double zeta) {
    double w = 0.0;
    for (int i = 0; i < m; ++i)
      w += cells.volumes(i) * std::clamp(f(i) - zeta, 0.0, 1.0);
    return w;
  };
  double lo = f.minCoeff() - 1.0;
  double hi = f.maxCoeff();
  for (int s = 0; s < steps; ++s) {
    const double mid = 0.5 * (lo + hi);
    if (mass(mid) > c)
      lo = mid;
    else
      hi = mid;
  }
  const double zeta = 0.5 * (lo + hi);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = std::clamp(f(i) - zeta, 0.0, 1.0);
  return v;
}

// Same idea for {v <= 1, sum |E_i| v_i = C}: W(zeta) = sum |E_i| min(f_i -
// zeta, 1).
inline Eigen::VectorXd bisect_upper(const Eigen::VectorXd& f,
                                    const WeightedCells& cells, double c,
                                    int steps = 200) {
  const int m = static_cast<int>(f.size());
  auto mass = [&](double zeta) {
    double w = 0.0;
    for (int i = 0; i < m; ++i)
      w += cells.volumes(i) * std::min(f(i) - zeta, 1.0);
    return w;
  };
  double lo = f.minCoeff() - 2.0;
  double hi = f.maxCoeff();
  while (mass(hi) >= c) hi = 2.0 * hi + 1.0;
  for (int s = 0; s < steps; ++s) {
    const double mid = 0.5 * (lo + hi);
    if (mass(mid) > c)
      lo = mid;
    else
      hi = mid;
  }
  const double zeta = 0.5 * (lo + hi);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = std::min(f(i) - zeta, 1.0);
  return v;
}

struct RandomInstance {
  Eigen::VectorXd f;
  WeightedCells cells;
  double budget;
};

// Draw an instance with m points, entries in [-2, 3], volumes in [0.1, 2]
// and a strictly interior budget.
inline RandomInstance random_instance(SplitMix64& rng, int max_m = 12) {
  const int m = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_m)));
  Eigen::VectorXd f = random_vector(rng, m, -2.0, 3.0);
  Eigen::VectorXd vols = random_vector(rng, m, 0.1, 2.0);
  WeightedCells cells{vols};
  const double budget = rng.uniform(0.05, 0.95) * cells.total();
  return RandomInstance{std::move(f), std::move(cells), budget};
}

inline std::shared_ptr<FimSet> shared_synthetic(int m, int n, int rank,
                                                uint64_t seed) {
  return std::make_shared<FimSet>(synthetic_fimset(m, n, rank, seed));
}

}  // namespace oed::testing
