// Command line driver: build or load a FIM field, run one or more solvers
// on it, and write convergence traces plus sparse solution files.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "oed/active_set.hpp"
#include "oed/errors.hpp"
#include "oed/fim_set.hpp"
#include "oed/first_order.hpp"
#include "oed/lotka_volterra.hpp"
#include "oed/problem.hpp"
#include "oed/simplicial.hpp"
#include "oed/synthetic.hpp"
#include "oed/trace.hpp"

namespace {

struct CliOptions {
  std::string problem = "lotka-volterra";
  std::string fims_path;
  std::string save_fims;
  double q = 0.0;
  double alpha = 0.0;
  double budget = 0.0;           // absolute C; wins over the fraction
  double budget_fraction = 0.0;  // of the total cell volume; default 5e-4
  std::vector<std::string> solvers;
  double tol_rel = 1e-10;
  int max_iter = 0;        // 0 keeps each solver's default
  int inner_max_iter = 0;  // Torsney / inner PGMA cap
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool gass_cold_start = false;
  int grid = 0;  // override: cube grid per axis for lotka-volterra
  int syn_m = 100;
  int syn_n = 4;
  int syn_rank = 4;
};

void add_common_options(CLI::App* cmd, CliOptions& o) {
  cmd->set_config("--config");
  cmd->add_option("--problem", o.problem, "Builtin problem family")
      ->check(CLI::IsMember({"lotka-volterra", "synthetic"}))
      ->capture_default_str();
  cmd->add_option("--fims", o.fims_path, "Load the FIM field from a cache file");
  cmd->add_option("--save-fims", o.save_fims, "Write the FIM field to a cache file");
  cmd->add_option("--q", o.q, "Criterion exponent q >= 0")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Regularization weight")->capture_default_str();
  auto* b = cmd->add_option("--budget", o.budget, "Absolute budget C");
  cmd->add_option("--budget-fraction", o.budget_fraction,
                  "Budget as a fraction of the total volume (default 5e-4)")
      ->excludes(b);
  cmd->add_option("--solver", o.solvers, "Solver to run (repeatable)")
      ->check(CLI::IsMember({"fista", "pgma", "sd", "sdm", "sdmh", "pdsas"}));
  cmd->add_option("--tol-rel", o.tol_rel, "Relative stopping tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "Iteration cap (0 = solver default)");
  cmd->add_option("--inner-max-iter", o.inner_max_iter,
                  "Inner iteration cap for sd/sdm/sdmh/pdsas (0 = default)");
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_flag("--gass-cold-start", o.gass_cold_start,
                "Start sdm/sdmh from the empty active set");
  cmd->add_option("--grid", o.grid, "Cells per axis for lotka-volterra (cube)");
  cmd->add_option("--m", o.syn_m, "Synthetic: number of cells")->capture_default_str();
  cmd->add_option("--n", o.syn_n, "Synthetic: parameter dimension")
      ->capture_default_str();
  cmd->add_option("--rank", o.syn_rank, "Synthetic: rank per cell")
      ->capture_default_str();
}

// exit codes
constexpr int kConfigError = 1;
constexpr int kSolverError = 2;
constexpr int kProblemError = 3;

std::shared_ptr<oed::FimSet> build_fims(const CliOptions& o) {
  if (!o.fims_path.empty())
    return std::make_shared<oed::FimSet>(oed::load_fimset(o.fims_path));
  if (o.problem == "synthetic")
    return std::make_shared<oed::FimSet>(
        oed::synthetic_fimset(o.syn_m, o.syn_n, o.syn_rank, o.seed));
  oed::LvConfig cfg;
  if (o.grid > 0) {
    const auto g = static_cast<std::uint64_t>(o.grid);
    cfg.counts = {g, g, g};
  }
  return std::make_shared<oed::FimSet>(oed::lv_fimset(cfg));
}

double resolve_budget(const CliOptions& o, const oed::FimSet& fims) {
  if (o.budget > 0.0) return o.budget;
  const double f = o.budget_fraction > 0.0 ? o.budget_fraction : 5e-4;
  return f * fims.cells().total();
}

int validate_solvers(const CliOptions& o, const oed::ProblemSpec& p) {
  if (o.solvers.empty()) {
    std::fprintf(stderr, "error: no solver given (use --solver)\n");
    return kConfigError;
  }
  for (const auto& s : o.solvers) {
    if (s == "sd" && (p.alpha != 0.0 || p.q < 0.0 || p.q > 1.0)) {
      std::fprintf(stderr, "error: sd needs alpha = 0 and q in [0, 1]\n");
      return kConfigError;
    }
    if (s == "sdmh" && !p.fims->grid()) {
      std::fprintf(stderr, "error: sdmh needs a problem with grid metadata\n");
      return kConfigError;
    }
  }
  if (!(p.C > 0.0) || p.C >= p.cells().total()) {
    std::fprintf(stderr, "error: budget must satisfy 0 < C < total volume\n");
    return kConfigError;
  }
  return 0;
}

oed::SolveResult dispatch(const std::string& name, const oed::ProblemSpec& p,
                          const CliOptions& o) {
  const Eigen::VectorXd w0 = p.uniform_design();
  if (name == "fista") {
    oed::FistaOptions fo;
    fo.tol_rel = o.tol_rel;
    if (o.max_iter > 0) fo.max_iter = o.max_iter;
    return oed::fista_solve(p, w0, fo);
  }
  if (name == "pgma") {
    oed::PgmaOptions po;
    po.tol_rel = o.tol_rel;
    if (o.max_iter > 0) po.max_iter = o.max_iter;
    return oed::pgma_solve(p, w0, po);
  }
  if (name == "sd") {
    oed::SdOptions so;
    so.tol_rel = o.tol_rel;
    so.seed = o.seed;
    if (o.max_iter > 0) so.max_outer = o.max_iter;
    if (o.inner_max_iter > 0) so.torsney_max_iter = o.inner_max_iter;
    return oed::sd_solve(p, so);
  }
  oed::GassOptions go;
  go.variant = name == "sdm"    ? oed::GassVariant::Sdm
               : name == "sdmh" ? oed::GassVariant::Sdmh
                                : oed::GassVariant::Pdsas;
  go.tol_rel = o.tol_rel;
  go.inner.tol_rel = o.tol_rel;
  go.seed = o.seed;
  go.cold_start = o.gass_cold_start;
  if (o.max_iter > 0) go.max_outer = o.max_iter;
  if (o.inner_max_iter > 0) go.inner.max_iter = o.inner_max_iter;
  return oed::gass_solve(p, go);
}

bool failed(oed::SolveStatus s) {
  return s == oed::SolveStatus::LineSearchFailure ||
         s == oed::SolveStatus::NotPositiveDefinite ||
         s == oed::SolveStatus::InitFailure ||
         s == oed::SolveStatus::InnerSolveFailure;
}

int support_of(const Eigen::VectorXd& w) {
  int nnz = 0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] > 0.0) ++nnz;
  return nnz;
}

void write_trace(const std::string& path, const oed::Trace& trace) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw oed::Error("cannot open " + path);
  std::fprintf(f, "iter,cpu_seconds,objective,residual,nnz,gamma,theta\n");
  for (const auto& t : trace)
    std::fprintf(f, "%d,%.17g,%.17g,%.17g,%d,%.17g,%.17g\n", t.iter, t.cpu_seconds,
                 t.objective, t.residual, t.nnz, t.gamma, t.theta);
  std::fclose(f);
}

void write_solution(const std::string& path, const oed::ProblemSpec& p,
                    const oed::SolveResult& r) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw oed::Error("cannot open " + path);
  std::fprintf(f, "# m %d\n", p.m());
  std::fprintf(f, "# C %.17g\n", p.C);
  std::fprintf(f, "# objective %.17g\n", r.objective_value);
  std::fprintf(f, "# residual %.17g\n", r.residual_value);
  std::fprintf(f, "index,value\n");
  for (int i = 0; i < p.m(); ++i)
    if (r.w[i] > 0.0) std::fprintf(f, "%d,%.17g\n", i, r.w[i]);
  std::fclose(f);
}

int run_command(const CliOptions& o, bool compare) {
  std::shared_ptr<oed::FimSet> fims;
  const double t_setup = oed::cpu_seconds_now();
  try {
    fims = build_fims(o);
    if (!o.save_fims.empty()) oed::save_fimset(*fims, o.save_fims);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: problem generation failed: %s\n", e.what());
    return kProblemError;
  }
  const double setup_seconds = oed::cpu_seconds_now() - t_setup;

  oed::ProblemSpec p{fims, o.q, o.alpha, resolve_budget(o, *fims)};
  if (int rc = validate_solvers(o, p); rc != 0) return rc;

  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s\n", o.out_dir.c_str());
    return kConfigError;
  }

  std::fprintf(stdout, "problem m=%d n=%d C=%.17g q=%.17g alpha=%.17g setup_seconds=%.3f\n",
               p.m(), p.n(), p.C, p.q, p.alpha, setup_seconds);

  std::FILE* table = nullptr;
  if (compare) {
    const std::string path = o.out_dir + "/compare.csv";
    table = std::fopen(path.c_str(), "w");
    if (!table) {
      std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
      return kConfigError;
    }
    std::fprintf(table, "solver,q,alpha,support,objective,seconds,iterations,status\n");
  }

  int rc = 0;
  for (const auto& name : o.solvers) {
    oed::SolveResult r;
    try {
      r = dispatch(name, p, o);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s failed: %s\n", name.c_str(), e.what());
      rc = kSolverError;
      continue;
    }
    const char* status = oed::to_string(r.status);
    std::fprintf(stdout,
                 "solver=%s status=%s objective=%.17g residual=%.17g support=%d "
                 "iterations=%d seconds=%.3f\n",
                 name.c_str(), status, r.objective_value, r.residual_value,
                 support_of(r.w), r.iterations, r.cpu_seconds);
    try {
      write_trace(o.out_dir + "/" + name + "_trace.csv", r.trace);
      if (!failed(r.status))
        write_solution(o.out_dir + "/" + name + "_solution.txt", p, r);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      if (table) std::fclose(table);
      return kConfigError;
    }
    if (table)
      std::fprintf(table, "%s,%.17g,%.17g,%d,%.17g,%.17g,%d,%s\n", name.c_str(), p.q,
                   p.alpha, support_of(r.w), r.objective_value, r.cpu_seconds,
                   r.iterations, status);
    if (failed(r.status)) rc = kSolverError;
  }
  if (table) std::fclose(table);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex solvers for optimal experimental design over weighted "
               "box-constrained simplices"};
  app.require_subcommand(1);

  CliOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "Run solvers, write traces and solutions");
  add_common_options(run, run_opts);

  CliOptions cmp_opts;
  CLI::App* cmp =
      app.add_subcommand("compare", "Run solvers on one problem, tabulate results");
  add_common_options(cmp, cmp_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (run->parsed()) return run_command(run_opts, false);
    return run_command(cmp_opts, true);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSolverError;
  }
}
