#include "warpsol/catalog.hpp"
#include "warpsol/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct RunFlags {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::optional<std::string> out;
  bool parallel = false;
  bool quiet = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--tol", f.tol, "Override every suite tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Override the sampling seed");
  cmd->add_option("--count", f.count, "Override the number of sample points")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Report path (default: $WARPSOL_REPORT_DIR/<scenario>.json)");
  cmd->add_flag("--parallel", f.parallel, "Run suites concurrently");
  cmd->add_flag("-q,--quiet", f.quiet, "Print only the final verdict");
}

int finish(const warpsol::ReportFile& report, const RunFlags& f) {
  std::cout << (f.quiet ? std::string(report.pass() ? "PASS\n" : "FAIL\n") : warpsol::summary(report));
  const auto path = warpsol::report_path(f.out, report.scenario);
  if (!path.empty()) {
    try {
      warpsol::write_report(report, path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    }
    if (!f.quiet) std::cout << "report written to " << path.string() << "\n";
  }
  return report.pass() ? 0 : 1;
}

int run_scenario(const warpsol::Scenario& sc, const RunFlags& f) {
  warpsol::Overrides o;
  o.tolerance = f.tol;
  o.seed = f.seed;
  o.count = f.count;
  o.parallel = f.parallel;
  return finish(warpsol::run(sc, o), f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpsol: verify conformal Ricci soliton identities on coordinate charts"};
  app.set_version_flag("--version", std::string(warpsol::kEngineVersion));
  app.require_subcommand(1);

  RunFlags check_flags, suite_flags, fd_flags;
  std::string scenario_path, suite_name, fd_name;
  std::optional<double> fd_h;

  auto* check = app.add_subcommand("check", "Run a scenario file");
  check->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  add_run_flags(check, check_flags);

  auto* suite = app.add_subcommand("suite", "Run a built-in catalog scenario");
  suite->add_option("name", suite_name, "Catalog scenario name")->required();
  add_run_flags(suite, suite_flags);

  auto* cat = app.add_subcommand("catalog", "Inspect the built-in catalog");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List catalog scenario names");
  std::string show_name;
  auto* cat_show = cat->add_subcommand("show", "Print a catalog scenario as JSON");
  cat_show->add_option("name", show_name)->required();

  auto* fd = app.add_subcommand("fd-check", "Compare jet curvature with finite differences on every chart");
  fd->set_help_flag("--help", "Print this help message and exit");
  fd->add_option("name", fd_name, "Catalog scenario name")->required();
  fd->add_option("--h", fd_h, "Finite-difference step")->check(CLI::PositiveNumber);
  add_run_flags(fd, fd_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_scenario(warpsol::load_scenario(scenario_path), check_flags);
    if (*suite) return run_scenario(warpsol::catalog_scenario(suite_name), suite_flags);
    if (*cat_list) {
      for (const auto& n : warpsol::catalog()) std::cout << n << "\n";
      return 0;
    }
    if (*cat_show) {
      std::cout << warpsol::catalog_source(show_name) << "\n";
      return 0;
    }
    if (*fd) {
      warpsol::Scenario sc = warpsol::catalog_scenario(fd_name);
      sc.name += "/fd-check";
      sc.suites.clear();
      for (const auto& chart : sc.charts) {
        warpsol::SuiteSpec s;
        s.type = warpsol::SuiteType::fd_check;
        s.target = chart.name();
        s.h = fd_h.value_or(warpsol::kFdStep);
        sc.suites.push_back(s);
      }
      return run_scenario(sc, fd_flags);
    }
  } catch (const warpsol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
