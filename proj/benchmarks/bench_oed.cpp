#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "oed/cells.hpp"
#include "oed/criteria.hpp"
#include "oed/first_order.hpp"
#include "oed/problem.hpp"
#include "oed/projection.hpp"
#include "oed/rng.hpp"
#include "oed/sym_matrix.hpp"
#include "oed/synthetic.hpp"

namespace {

oed::WeightedCells random_cells(oed::SplitMix64& rng, int m) {
  Eigen::VectorXd vols(m);
  for (int i = 0; i < m; ++i) vols(i) = rng.uniform(0.1, 2.0);
  return oed::WeightedCells{vols};
}

void BM_ProjectRestricted(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  oed::SplitMix64 rng(7);
  auto cells = random_cells(rng, m);
  Eigen::VectorXd f(m);
  for (int i = 0; i < m; ++i) f(i) = rng.uniform(-2.0, 3.0);
  const double budget = 0.3 * cells.total();
  for (auto _ : state) {
    auto r = oed::project_restricted_simplex(f, cells, budget);
    benchmark::DoNotOptimize(r.v.data());
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_ProjectRestricted)->Arg(1000)->Arg(10000)->Arg(100000)->Complexity();

void BM_Synthesize(benchmark::State& state) {
  const int m = 27000;
  const int support = static_cast<int>(state.range(0));
  auto fims = std::make_shared<oed::FimSet>(oed::synthetic_fimset(m, 4, 2, 11));
  oed::SplitMix64 rng(13);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  for (int k = 0; k < support; ++k) w(rng.below(m)) = rng.uniform(0.1, 1.0);
  for (auto _ : state) {
    auto info = fims->synthesize(w);
    benchmark::DoNotOptimize(info.packed().data());
  }
}
BENCHMARK(BM_Synthesize)->Arg(16)->Arg(27000);

void BM_Adjoint(benchmark::State& state) {
  const int m = 27000;
  auto fims = std::make_shared<oed::FimSet>(oed::synthetic_fimset(m, 4, 2, 17));
  const oed::SymMatrix p = oed::SymMatrix::identity(4);
  for (auto _ : state) {
    auto a = fims->adjoint(p);
    benchmark::DoNotOptimize(a.data());
  }
}
BENCHMARK(BM_Adjoint);

void BM_Eigendecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  oed::SplitMix64 rng(19);
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
  const oed::SymMatrix a =
      oed::SymMatrix::from_dense(b * b.transpose() +
                                 0.1 * Eigen::MatrixXd::Identity(n, n));
  for (auto _ : state) {
    auto eig = oed::eigendecompose(a);
    benchmark::DoNotOptimize(eig.eigenvalues.data());
  }
}
BENCHMARK(BM_Eigendecompose)->Arg(4)->Arg(8)->Arg(16);

void BM_CriterionGrad(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  oed::SplitMix64 rng(23);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = rng.uniform(0.5, 5.0);
  const oed::SymMatrix a = oed::SymMatrix::diagonal(d);
  for (auto _ : state) {
    auto g = oed::grad_criterion(2.0, a);
    benchmark::DoNotOptimize(g.packed().data());
  }
}
BENCHMARK(BM_CriterionGrad)->Arg(4)->Arg(8);

void BM_PgmaSynthetic(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto fims = std::make_shared<oed::FimSet>(oed::synthetic_fimset(m, 4, 2, 29));
  const oed::ProblemSpec p{fims, 0.0, 0.0, 0.2 * m};
  for (auto _ : state) {
    auto r = oed::pgma_solve(p, p.uniform_design());
    benchmark::DoNotOptimize(r.objective_value);
  }
}
BENCHMARK(BM_PgmaSynthetic)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
