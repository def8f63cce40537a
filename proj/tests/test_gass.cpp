#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "oed/active_set.hpp"
#include "oed/errors.hpp"
#include "oed/first_order.hpp"

using namespace oed;
using namespace oed::testing;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("single release rule") {
  SUBCASE("frees the active coordinate with the smallest score") {
    const std::vector<int> next =
        sdm_update({0, 2}, vec({0.0, 1.0, 0.0}), vec({5.0, 9.0, 2.0}));
    CHECK(next == std::vector<int>{0});
  }

  SUBCASE("empty active set pins the current zeros") {
    const std::vector<int> next =
        sdm_update({}, vec({0.0, 0.5, 0.0, 0.5}), vec({1.0, 2.0, 3.0, 4.0}));
    CHECK(next == std::vector<int>{0, 2});
  }

  SUBCASE("ties free the lowest index") {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(8, 0.5);
    w(1) = 0.0;
    w(6) = 0.0;
    Eigen::VectorXd score = Eigen::VectorXd::Constant(8, 9.0);
    score(1) = -3.0;
    score(6) = -3.0;
    const std::vector<int> next = sdm_update({1, 6}, w, score);
    CHECK(next == std::vector<int>{6});
  }

  SUBCASE("new zeros join the active set") {
    // Coordinate 3 became zero in the latest inner solve; coordinate 0 is
    // released, 3 stays pinned.
    const std::vector<int> next =
        sdm_update({0}, vec({0.0, 0.4, 0.6, 0.0}), vec({-1.0, 0.0, 0.0, 5.0}));
    CHECK(next == std::vector<int>{3});
  }
}

TEST_CASE("hierarchical release rule") {
  const GridInfo chain5{{5}, {0.0}, {5.0}};

  SUBCASE("frees all weak local minima along a chain") {
    const std::vector<int> active{0, 1, 2, 3, 4};
    const Eigen::VectorXd w = Eigen::VectorXd::Zero(5);
    const std::vector<int> next =
        sdmh_update(active, w, vec({3.0, 1.0, 2.0, 0.0, 4.0}), chain5);
    // Positions 1 and 3 are the local minima, so they leave the set.
    CHECK(next == std::vector<int>{0, 2, 4});
  }

  SUBCASE("equal scores free everything") {
    const std::vector<int> active{0, 1, 2, 3, 4};
    const std::vector<int> next = sdmh_update(
        active, Eigen::VectorXd::Zero(5), Eigen::VectorXd::Constant(5, 2.0),
        chain5);
    CHECK(next.empty());
  }

  SUBCASE("isolated active cell is always freed") {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(5, 0.3);
    w(2) = 0.0;
    const std::vector<int> next =
        sdmh_update({2}, w, vec({0.0, 0.0, 99.0, 0.0, 0.0}), chain5);
    CHECK(next.empty());
  }

  SUBCASE("neighbors outside the active set are ignored") {
    const GridInfo chain3{{3}, {0.0}, {3.0}};
    Eigen::VectorXd w = vec({0.0, 0.7, 0.0});
    const std::vector<int> next =
        sdmh_update({0, 2}, w, vec({5.0, 0.0, 3.0}), chain3);
    // Both actives only neighbor the inactive middle cell, so both are
    // weak minima vacuously.
    CHECK(next.empty());
  }
}

TEST_CASE("primal-dual set estimate") {
  const WeightedCells ones3 = WeightedCells::uniform(3, 1.0);

  SUBCASE("no violated multipliers, no active set") {
    const auto [a, c] = pdsas_update(Eigen::VectorXd::Zero(3),
                                     vec({0.1, 0.2, 0.3}), 1.0, ones3, 1.0);
    CHECK(a.empty());
    CHECK(c == 1.0);
  }

  SUBCASE("budget-feasible estimate is kept as is") {
    const auto [a, c] = pdsas_update(vec({-1.0, -1.0, 0.0}),
                                     vec({0.2, 0.0, 0.5}), 1.0, ones3, 1.0);
    CHECK(a == std::vector<int>{0, 1});
    CHECK(c == 1.0);
  }

  SUBCASE("escalation shrinks the set until the budget fits") {
    const auto [a, c] = pdsas_update(vec({-1.0, -1.0, 0.0}),
                                     vec({0.2, 0.0, 0.5}), 1.0, ones3, 1.5);
    CHECK(a == std::vector<int>{1});
    CHECK(c == 10.0);
  }

  SUBCASE("stall is reported after fifty decades") {
    CHECK_THROWS_AS(pdsas_update(vec({-1.0}), vec({0.0}),
                                 1.0, WeightedCells::uniform(1, 1.0), 0.5),
                    EscalationStallError);
  }
}

TEST_CASE("all variants solve the closed-form vertex problem") {
  const ProblemSpec p = toy_problem();
  for (GassVariant variant :
       {GassVariant::Sdm, GassVariant::Sdmh, GassVariant::Pdsas}) {
    GassOptions opt;
    opt.variant = variant;
    const GassResult r = gass_solve(p, opt);
    CHECK(r.status == SolveStatus::Converged);
    CHECK(std::abs(r.w(0)) <= 1e-6);
    CHECK(std::abs(r.w(1) - 1.0) <= 1e-6);
    CHECK(std::abs(r.objective_value + std::log(2.0)) <= 1e-8);
    CHECK(r.w.minCoeff() >= 0.0);
    CHECK(r.active_sizes.size() == static_cast<std::size_t>(r.iterations));
  }
}

TEST_CASE("cold start with nothing active reproduces the plain solver") {
  const auto fims = shared_synthetic(30, 3, 3, 131);
  ProblemSpec p{fims, 0.0, 0.0, 8.0};
  GassOptions opt;
  opt.variant = GassVariant::Sdm;
  opt.cold_start = true;
  const GassResult r = gass_solve(p, opt);
  const SolveResult direct = pgma_solve(p, p.uniform_design());
  REQUIRE(r.status == SolveStatus::Converged);
  CHECK(r.iterations == 1);
  REQUIRE(r.active_sizes.size() == 1);
  CHECK(r.active_sizes[0] == 0);
  CHECK((r.w - direct.w).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("hierarchical variant needs grid metadata") {
  const auto fims = shared_synthetic(10, 2, 2, 137);
  ProblemSpec p{fims, 0.0, 0.0, 3.0};
  GassOptions opt;
  opt.variant = GassVariant::Sdmh;
  CHECK_THROWS_AS(gass_solve(p, opt), NoGridError);
}

TEST_CASE("primal-dual variant ends nonnegative on a generic instance") {
  const auto fims = shared_synthetic(30, 3, 3, 139);
  ProblemSpec p{fims, 0.0, 0.0, 8.0};
  GassOptions opt;
  opt.variant = GassVariant::Pdsas;
  const GassResult r = gass_solve(p, opt);
  REQUIRE(r.status == SolveStatus::Converged);
  CHECK(r.w.minCoeff() >= 0.0);
  CHECK(r.w.maxCoeff() <= 1.0);
  CHECK(r.residual_value <= r.tolerance_value);
  CHECK(std::abs(p.cells().integral(r.w) - p.C) <= 1e-8 * p.C);
}

TEST_CASE("single release variant matches the plain solver objective") {
  const auto fims = shared_synthetic(25, 3, 3, 149);
  ProblemSpec p{fims, 0.0, 0.0, 6.0};
  GassOptions opt;
  opt.variant = GassVariant::Sdm;
  const GassResult r = gass_solve(p, opt);
  const SolveResult direct = pgma_solve(p, p.uniform_design());
  REQUIRE(r.status == SolveStatus::Converged);
  REQUIRE(direct.status == SolveStatus::Converged);
  CHECK(std::abs(r.objective_value - direct.objective_value) <=
        1e-6 * std::abs(direct.objective_value));
  CHECK(r.worst_budget_error <= 1e-8 * p.C);
}
