#ifndef OED_PROJECTION_HPP
#define OED_PROJECTION_HPP

#include <Eigen/Dense>

#include "oed/cells.hpp"

namespace oed {

struct ProjectionResult {
  Eigen::VectorXd v;  // projected point
  double zeta = 0.0;  // shift so that v = clamp(f - zeta)
  int nnz = 0;        // entries with v_i != 0
  int ones = 0;       // entries with v_i == 1
};

// Exact projection of f onto {w : 0 <= w <= 1, sum_i |E_i| w_i = C} in the
// M-weighted inner product; v_i = min(max(f_i - zeta, 0), 1) with the unique
// shift zeta meeting the budget. Sort-based, O(m log m), no iteration.
// Requires 0 < C < sum |E_i| (throws BudgetInfeasibleError otherwise).
ProjectionResult project_restricted_simplex(const Eigen::VectorXd& f,
                                            const WeightedCells& cells, double C);

// Projection onto {w : w <= 1, sum_i |E_i| w_i = C}: v_i = min(f_i - zeta, 1).
// No lower bound, so entries may come out negative. Requires C <= sum |E_i|.
ProjectionResult project_upper_simplex(const Eigen::VectorXd& f,
                                       const WeightedCells& cells, double C);

// Componentwise clamp onto [0,1]^m (no budget constraint).
Eigen::VectorXd project_box(const Eigen::VectorXd& f);

// Candidate shift for the restricted projection. f must be sorted descending;
// k and l are counts of leading entries (l of them at the upper bound), with
// 0 <= l <= k <= m and k >= 1:
//
//   k > l: zeta(k,l) = (sum_{i=l+1..k} |E_i|)^{-1}
//                      (sum_{i=1..l} |E_i| + sum_{i=l+1..k} |E_i| f_i - C)
//   k = l: zeta(k,k) = f_k - 1
double zeta_shift(const Eigen::VectorXd& f_sorted, const WeightedCells& cells_sorted,
                  double C, int k, int l);

}  // namespace oed

#endif
