// End-to-end acceptance harness. Each numbered check prints one PASS/FAIL
// line; the exit code is the number of failed checks. Heavy solver runs are
// shared between checks, so the order below matters.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oed/active_set.hpp"
#include "oed/criteria.hpp"
#include "oed/first_order.hpp"
#include "oed/lotka_volterra.hpp"
#include "oed/optimality.hpp"
#include "oed/projection.hpp"
#include "oed/simplicial.hpp"
#include "oed/trace.hpp"

using namespace oed;
using namespace oed::testing;

namespace {

int g_failures = 0;

void report(int number, const char* name, bool pass, const char* fmt, ...) {
  char detail[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(detail, sizeof detail, fmt, args);
  va_end(args);
  std::printf("%s %2d %-34s %s\n", pass ? "PASS" : "FAIL", number, name, detail);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

int support_of(const Eigen::VectorXd& w) {
  int nnz = 0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] > 0.0) ++nnz;
  return nnz;
}

double pairwise_spread(const std::vector<double>& xs) {
  const double hi = *std::max_element(xs.begin(), xs.end());
  const double lo = *std::min_element(xs.begin(), xs.end());
  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, std::abs(x));
  return (hi - lo) / std::max(scale, 1e-30);
}

void check_projection_oracle() {
  SplitMix64 rng(20240601);
  const double t0 = cpu_seconds_now();
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const RandomInstance inst = random_instance(rng);
    const auto r = project_restricted_simplex(inst.f, inst.cells, inst.budget);
    const Eigen::VectorXd ref =
        bisect_restricted(inst.f, inst.cells, inst.budget);
    worst = std::max(worst, (r.v - ref).lpNorm<Eigen::Infinity>());
  }
  const double secs = cpu_seconds_now() - t0;
  report(1, "projection-oracle-agreement", worst <= 1e-9 && secs < 1.0,
         "max deviation %.3g over 1000 instances, %.2f s", worst, secs);
}

void check_projection_properties() {
  SplitMix64 rng(20240602);
  int violations = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const RandomInstance inst = random_instance(rng);
    const int m = static_cast<int>(inst.f.size());

    auto mass = [&](double zeta) {
      double w = 0.0;
      for (int i = 0; i < m; ++i)
        w += inst.cells.volumes(i) *
             std::clamp(inst.f(i) - zeta, 0.0, 1.0);
      return w;
    };
    for (int pair = 0; pair < 5; ++pair) {
      double z1 = rng.uniform(-4.0, 4.0);
      double z2 = rng.uniform(-4.0, 4.0);
      if (z1 < z2) std::swap(z1, z2);
      if (mass(z1) > mass(z2) + 1e-12) ++violations;
    }

    const auto r = project_restricted_simplex(inst.f, inst.cells, inst.budget);
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return inst.f(a) > inst.f(b); });
    Eigen::VectorXd fs(m), vols(m);
    for (int i = 0; i < m; ++i) {
      fs(i) = inst.f(order[i]);
      vols(i) = inst.cells.volumes(order[i]);
    }
    const WeightedCells cs{vols};
    for (int l = 0; l + 2 <= r.nnz; ++l) {
      const double z0 = zeta_shift(fs, cs, inst.budget, r.nnz, l);
      const double z1 = zeta_shift(fs, cs, inst.budget, r.nnz, l + 1);
      const double lhs = z1 - z0;
      const double rhs = 1.0 - (fs(l) - z0);
      if ((lhs > 1e-12 && rhs < -1e-12) || (lhs < -1e-12 && rhs > 1e-12))
        ++violations;
    }
  }
  report(2, "shift-map-properties", violations == 0,
         "%d violations over 1000 instances", violations);
}

void check_gradient_oracle() {
  SplitMix64 rng(20240603);
  const double t0 = cpu_seconds_now();
  double worst_rel = 0.0;
  for (double q : {0.0, 0.5, 1.0, 2.0, 10.0}) {
    for (int rep = 0; rep < 50; ++rep) {
      const SymMatrix a = random_spd(rng, 4, 0.1, 10.0);
      const SymMatrix dir = random_spd(rng, 4, -1.0, 1.0);
      const double h = 1e-6 * a.to_dense().norm() / dir.to_dense().norm();
      SymMatrix plus = a, minus = a;
      plus.axpy(h, dir);
      minus.axpy(-h, dir);
      const double fd =
          (eval_criterion(q, plus) - eval_criterion(q, minus)) / (2.0 * h);
      const double exact = grad_criterion(q, a).frobenius_dot(dir);
      const double rel =
          std::abs(fd - exact) / (1.0 + std::max(std::abs(fd), std::abs(exact)));
      worst_rel = std::max(worst_rel, rel);
    }
  }
  const double secs = cpu_seconds_now() - t0;
  report(3, "criterion-gradient-oracle", worst_rel <= 1e-5 && secs < 1.0,
         "worst relative error %.3g, %.2f s", worst_rel, secs);
}

void check_sensitivity_oracle() {
  const double t0 = cpu_seconds_now();
  LvConfig cfg;
  const Eigen::Vector2d y0(5.0, 5.0);
  const auto base = lv_trajectory(y0, cfg);
  double worst = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double h = std::max(1e-6 * std::abs(cfg.p[j]), 1e-8);
    LvConfig up = cfg, dn = cfg;
    up.p[j] += h;
    dn.p[j] -= h;
    const auto tu = lv_trajectory(y0, up);
    const auto td = lv_trajectory(y0, dn);
    for (int k : {100, 500, 1000}) {
      for (int row = 0; row < 2; ++row) {
        const double fd = (tu[k].y(row) - td[k].y(row)) / (2.0 * h);
        const double exact = base[k].z(row, j);
        worst = std::max(worst, std::abs(fd - exact) /
                                    std::max(1.0, std::abs(exact)));
      }
    }
  }
  const double secs = cpu_seconds_now() - t0;
  report(4, "sensitivity-oracle", worst <= 1e-4 && secs < 5.0,
         "worst relative error %.3g, %.2f s", worst, secs);
}

}  // namespace

int main() {
  check_projection_oracle();
  check_projection_properties();
  check_gradient_oracle();
  check_sensitivity_oracle();

  // Shared large-grid field.
  std::printf("---- building the 30x30x30 benchmark field\n");
  std::fflush(stdout);
  LvConfig cfg30;
  const auto fims30 = std::make_shared<FimSet>(lv_fimset(cfg30));
  const double C30 = lv_budget(cfg30);
  const ProblemSpec p30{fims30, 0.0, 0.0, C30};

  // 5: plain converging run on the large grid.
  const PgmaInit init30 = pgma_initialize(p30, p30.uniform_design());
  PgmaOptions popt30;
  popt30.gamma0 = init30.gamma0;
  const SolveResult pgma30 = pgma_solve(p30, p30.uniform_design(), popt30);
  {
    const double budget_err =
        std::abs(p30.cells().integral(pgma30.w) - 5.0);
    const int support = support_of(pgma30.w);
    const bool pass = pgma30.status == SolveStatus::Converged &&
                      pgma30.iterations <= 1000 && pgma30.cpu_seconds <= 120.0 &&
                      budget_err <= 1e-6 && support >= 12 && support <= 25;
    report(5, "large-grid-extrapolated-solver", pass,
           "status %s, %d iterations, %.1f s, budget error %.2g, support %d",
           to_string(pgma30.status), pgma30.iterations, pgma30.cpu_seconds,
           budget_err, support);
  }

  // 6: regularization switches the support regime.
  const ProblemSpec p_q1{fims30, 1.0, 1e-3, C30};
  const SolveResult full = pgma_solve(p_q1, p_q1.uniform_design());
  const ProblemSpec p_q0{fims30, 0.0, 1e-3, C30};
  const SolveResult sparse = pgma_solve(p_q0, p_q0.uniform_design());
  {
    const int s_full = support_of(full.w);
    const int s_sparse = support_of(sparse.w);
    const bool pass = full.status == SolveStatus::Converged &&
                      sparse.status == SolveStatus::Converged &&
                      s_full > static_cast<int>(0.9 * p30.m()) && s_sparse <= 25;
    report(6, "regularized-support-contrast", pass,
           "support %d of %d at q=1, %d at q=0 (alpha 1e-3)", s_full, p30.m(),
           s_sparse);
  }

  // 7: step-size gap against the momentum solver from the same start.
  FistaOptions fopt30;
  fopt30.gamma0 = init30.gamma0;
  const SolveResult fista30 = fista_solve(p30, p30.uniform_design(), fopt30);
  {
    const double ratio = pgma30.max_gamma / fista30.max_gamma;
    report(7, "step-size-gap", ratio >= 100.0,
           "max step ratio %.3g (momentum run: %s after %d iterations)", ratio,
           to_string(fista30.status), fista30.iterations);
  }

  // 8: all solvers agree on the small grid.
  std::printf("---- building the 10x10x10 benchmark field\n");
  std::fflush(stdout);
  LvConfig cfg10;
  cfg10.counts = {10, 10, 10};
  const auto fims10 = std::make_shared<FimSet>(lv_fimset(cfg10));
  const ProblemSpec p10{fims10, 0.0, 0.0, lv_budget(cfg10)};

  const SolveResult pgma10 = pgma_solve(p10, p10.uniform_design());
  const SdResult sd10 = sd_solve(p10);
  GassOptions gopt;
  gopt.variant = GassVariant::Sdm;
  const GassResult sdm10 = gass_solve(p10, gopt);
  gopt.variant = GassVariant::Sdmh;
  const GassResult sdmh10 = gass_solve(p10, gopt);
  gopt.variant = GassVariant::Pdsas;
  const GassResult pdsas10 = gass_solve(p10, gopt);
  {
    const std::vector<double> objectives{
        pgma10.objective_value, sd10.objective_value, sdm10.objective_value,
        sdmh10.objective_value, pdsas10.objective_value};
    const double spread = pairwise_spread(objectives);
    const double total = pgma10.cpu_seconds + sd10.cpu_seconds +
                         sdm10.cpu_seconds + sdmh10.cpu_seconds +
                         pdsas10.cpu_seconds;
    const bool residuals_ok = sdm10.residual_value <= sdm10.tolerance_value &&
                              sdmh10.residual_value <= sdmh10.tolerance_value &&
                              pdsas10.residual_value <= pdsas10.tolerance_value;
    const bool pass = spread <= 1e-5 && residuals_ok &&
                      pdsas10.w.minCoeff() >= 0.0 && total < 60.0;
    report(8, "small-grid-cross-solver", pass,
           "objective spread %.3g, active-set residuals %s, min weight %.3g, "
           "%.1f s total",
           spread, residuals_ok ? "ok" : "violated", pdsas10.w.minCoeff(),
           total);
  }

  // 9: closed-form toy across every solver.
  {
    const ProblemSpec toy = toy_problem();
    struct Named {
      const char* name;
      SolveResult r;
    };
    std::vector<Named> runs;
    runs.push_back({"fista", fista_solve(toy, toy.uniform_design())});
    runs.push_back({"pgma", pgma_solve(toy, toy.uniform_design())});
    runs.push_back({"sd", sd_solve(toy)});
    const std::vector<std::pair<GassVariant, const char*>> variants{
        {GassVariant::Sdm, "sdm"},
        {GassVariant::Sdmh, "sdmh"},
        {GassVariant::Pdsas, "pdsas"}};
    for (const auto& [variant, name] : variants) {
      GassOptions go;
      go.variant = variant;
      runs.push_back({name, gass_solve(toy, go)});
    }
    bool pass = true;
    std::string bad;
    for (const auto& run : runs) {
      const bool ok = std::abs(run.r.objective_value + std::log(2.0)) <= 1e-8 &&
                      std::abs(run.r.w(0)) <= 1e-6 &&
                      std::abs(run.r.w(1) - 1.0) <= 1e-6;
      if (!ok) {
        pass = false;
        bad += std::string(" ") + run.name;
      }
    }
    report(9, "closed-form-toy", pass, "%s",
           pass ? "all six solvers on the optimal vertex"
                : ("deviating:" + bad).c_str());
  }

  // 10: feasibility of all logged box-constrained iterates from the runs
  // above.
  {
    struct Logged {
      const char* name;
      const SolveResult* r;
      double budget;
    };
    const std::vector<Logged> logged{
        {"pgma-30", &pgma30, C30},   {"pgma-30-q1", &full, C30},
        {"pgma-30-q0", &sparse, C30}, {"fista-30", &fista30, C30},
        {"pgma-10", &pgma10, p10.C}, {"sdm-10", &sdm10, p10.C},
        {"sdmh-10", &sdmh10, p10.C},
    };
    bool pass = true;
    std::string bad;
    double worst_budget_rel = 0.0;
    for (const auto& l : logged) {
      worst_budget_rel = std::max(worst_budget_rel,
                                  l.r->worst_budget_error / l.budget);
      if (l.r->worst_bound_violation != 0.0 ||
          l.r->worst_budget_error > 1e-8 * l.budget) {
        pass = false;
        bad += std::string(" ") + l.name;
      }
    }
    if (pass)
      report(10, "iterate-feasibility-sweep", true,
             "bounds exact, worst relative budget error %.3g",
             worst_budget_rel);
    else
      report(10, "iterate-feasibility-sweep", false, "violations in%s",
             bad.c_str());
  }

  // 11: qualitative timing order on the large grid, 2x slack.
  {
    GassOptions go;
    go.variant = GassVariant::Sdm;
    const GassResult sdm30 = gass_solve(p30, go);
    go.variant = GassVariant::Sdmh;
    const GassResult sdmh30 = gass_solve(p30, go);
    go.variant = GassVariant::Pdsas;
    const GassResult pdsas30 = gass_solve(p30, go);
    const double t_pgma = pgma30.cpu_seconds;
    const double t_fista = fista30.cpu_seconds;
    const double t_sdm = sdm30.cpu_seconds;
    const double t_sdmh = sdmh30.cpu_seconds;
    const double t_pdsas = pdsas30.cpu_seconds;
    const bool pass = t_pgma <= 2.0 * t_fista && t_sdmh <= 2.0 * t_sdm &&
                      t_sdm <= 2.0 * t_pdsas && t_pdsas <= 2.0 * t_pgma;
    report(11, "timing-order", pass,
           "fista %.1f, pgma %.1f, pdsas %.1f, sdm %.1f, sdmh %.1f s", t_fista,
           t_pgma, t_pdsas, t_sdm, t_sdmh);
  }

  std::printf("%d of 11 checks failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
