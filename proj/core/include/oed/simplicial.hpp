#ifndef OED_SIMPLICIAL_HPP
#define OED_SIMPLICIAL_HPP

#include "oed/first_order.hpp"
#include "oed/problem.hpp"
#include "oed/rng.hpp"

namespace oed {

// Minimizer of <s, scores>_M over the design set: fill s_i = 1 in ascending
// score order while the remaining budget covers the cell, then one
// fractional entry. Cells with exactly equal scores share the remaining
// budget proportionally to their volumes, so tied cells get equal values.
Eigen::VectorXd greedy_vertex_lp(const Eigen::VectorXd& scores,
                                 const WeightedCells& cells, double C);

// Random vertex of the design set: greedy fill along a shuffled cell order.
Eigen::VectorXd random_vertex(SplitMix64& rng, const WeightedCells& cells, double C);

// Vertices are kept as full-length designs; the reduced master problem
// runs on their information matrices.
struct VertexSet {
  std::vector<Eigen::VectorXd> columns;
  std::vector<SymMatrix> fims;  // synthesize(column), cached

  int size() const { return static_cast<int>(columns.size()); }
};

struct TorsneyResult {
  Eigen::VectorXd lambda;
  int iterations = 0;
  bool initial_satisfied = false;  // stopping test already held at lambda0
  SolveStatus status = SolveStatus::Converged;
};

// Multiplicative weight iteration for the reduced problem
// min Phi_q(sum_j lambda_j Ubar_j) over the unit simplex:
//   lambda_j <- lambda_j * (G : Ubar_j) / (G : sum_k lambda_k Ubar_k)
// stopping when lambda_j * (max_k d_k - d_j) <= delta for all j.
// lambda0 must be strictly positive where it matters and sum to one.
TorsneyResult torsney_solve(const std::vector<SymMatrix>& fims, double q,
                            Eigen::VectorXd lambda0, double delta,
                            int max_iter = 50000);

struct SdOptions {
  double delta0 = 1e-2;
  double delta_floor = 1e-12;
  int torsney_max_iter = 50000;
  int max_outer = 300;
  double tol_rel = 1e-10;
  std::uint64_t seed = 0;
  int max_random_vertices = 50;
};

struct SdResult : SolveResult {
  int vertex_count = 0;
};

// Simplicial decomposition: alternate the greedy vertex oracle with the
// Torsney master solve, round tiny barycentric weights to zero, purge unused
// columns, and tighten delta whenever the master's warm start was already
// good enough. Only supports alpha = 0 and q in [0,1] (throws
// std::invalid_argument otherwise). Starts from the uniform design.
SdResult sd_solve(const ProblemSpec& p, const SdOptions& opt = {});

}  // namespace oed

#endif
