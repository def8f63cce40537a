#ifndef OED_ACTIVE_SET_HPP
#define OED_ACTIVE_SET_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "oed/fim_set.hpp"
#include "oed/first_order.hpp"
#include "oed/problem.hpp"

namespace oed {

enum class GassVariant { Sdm, Sdmh, Pdsas };

struct GassOptions {
  GassVariant variant = GassVariant::Sdm;
  double c0 = 1.0;  // PDSAS penalty, escalated by 10 when the inner set
                    // would be budget-infeasible
  PgmaOptions inner{.max_iter = 10000};
  int max_outer = 300;
  double tol_rel = 1e-10;
  std::uint64_t seed = 0;  // for the random vertices that widen a rank-deficient seed
  // Start from the empty active set instead of pinning the complement of
  // the greedy vertex support at the uniform design (SDM/SDMH only).
  bool cold_start = false;
};

struct GassResult : SolveResult {
  std::vector<int> active_sizes;  // |A| per outer iteration
};

// One-coordinate release: s = argmin of score over the active set (lowest
// index on ties), next active set = ({i : w_i = 0} union active) \ {s}.
// The union keeps a seeded active set effective on the first iteration;
// afterwards every active coordinate is an exact zero of w and the rule
// coincides with {i : w_i = 0} \ {s}. Empty active set frees nothing and
// returns {i : w_i = 0}.
std::vector<int> sdm_update(const std::vector<int>& active, const Eigen::VectorXd& w,
                            const Eigen::VectorXd& score);

// Releases every active coordinate whose score is a weak local minimum
// with respect to its face-adjacent grid neighbors inside the active set;
// isolated active cells qualify vacuously.
std::vector<int> sdmh_update(const std::vector<int>& active, const Eigen::VectorXd& w,
                             const Eigen::VectorXd& score, const GridInfo& grid);

// Primal-dual set estimate A = {i : nu_i + c w_i < 0}, escalating c by 10
// until the inactive cells can carry the budget. Throws EscalationStallError
// after 50 decades.
std::pair<std::vector<int>, double> pdsas_update(const Eigen::VectorXd& nu,
                                                 const Eigen::VectorXd& w, double c,
                                                 const WeightedCells& cells, double C);

GassResult gass_solve(const ProblemSpec& p, const GassOptions& opt = {});

}  // namespace oed

#endif
