#include "warpsol/catalog.hpp"
#include "warpsol/runner.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace warpsol;
namespace fs = std::filesystem;

namespace {

std::string scenario_file(const char* name) { return std::string(WARPSOL_SCENARIO_DIR) + "/" + name; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(WARPSOL_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path temp_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("warpsol_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::set<std::string> failing_checks(const ReportFile& rf) {
  std::set<std::string> out;
  for (const auto& s : rf.suites)
    for (const auto& c : s.report.checks)
      if (!c.ok()) out.insert(s.report.suite + "/" + c.name);
  return out;
}

}  // namespace

TEST(Scenario, MinimalFilePasses) {
  const Scenario sc = load_scenario(scenario_file("minimal-plane.json"));
  EXPECT_EQ(sc.name, "minimal-plane");
  const ReportFile rf = run(sc);
  EXPECT_TRUE(rf.pass());
  ASSERT_EQ(rf.suites.size(), 2u);
  EXPECT_EQ(rf.suites[1].report.provenance.n_conv, 1);
}

TEST(Scenario, LoadErrors) {
  EXPECT_THROW(load_scenario(scenario_file("undefined-manifold.json")), ValidationError);
  try {
    load_scenario(scenario_file("undefined-manifold.json"));
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.name(), "B2");
  }
  try {
    load_scenario(scenario_file("unknown-symbol.json"));
    FAIL() << "expected UnknownSymbol";
  } catch (const UnknownSymbol& e) {
    EXPECT_NE(std::string(e.what()).find("q"), std::string::npos);
  }
  EXPECT_THROW(load_scenario(scenario_file("does-not-exist.json")), ParseError);
  EXPECT_THROW(parse_scenario("{", "inline"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"name": "x", "bogus": 1})", "inline"), ParseError);
}

TEST(Scenario, UnknownSuiteTypeAndDuplicateNames) {
  const char* dup = R"({"name": "d", "manifolds": [
      {"name": "A", "coords": ["x"], "domain": [[0, 1]], "metric": [["1"]]},
      {"name": "A", "coords": ["y"], "domain": [[0, 1]], "metric": [["1"]]}]})";
  EXPECT_THROW(parse_scenario(dup, "inline"), ValidationError);
  const char* bad = R"({"name": "d", "manifolds": [
      {"name": "A", "coords": ["x"], "domain": [[0, 1]], "metric": [["1"]]}],
      "suites": [{"type": "nope", "manifold": "A"}]})";
  EXPECT_THROW(parse_scenario(bad, "inline"), ValidationError);
}

TEST(Scenario, HypothesisFailureIsReportedNotAsserted) {
  const ReportFile rf = run(load_scenario(scenario_file("hypothesis-failed.json")));
  EXPECT_FALSE(rf.pass());
  ASSERT_EQ(rf.suites.size(), 1u);
  ASSERT_EQ(rf.suites[0].report.checks.size(), 1u);
  EXPECT_EQ(rf.suites[0].report.checks[0].status, Status::hypothesis_failed);
  EXPECT_NEAR(rf.suites[0].report.checks[0].max_residual, 3.0, 1e-9);
}

TEST(Scenario, SampleFilesBehaveAsDocumented) {
  EXPECT_TRUE(run(load_scenario(scenario_file("gaussian-soliton.json"))).pass());
}

TEST(Catalog, ContainsRequiredEntries) {
  const auto names = catalog();
  for (const char* n : {"euclidean-flat", "sphere-unit", "hyperbolic-halfplane", "polar-warped", "sphere-as-warped",
                        "sphere-lemma11", "direct-product-concurrent", "grw-static", "grw-milne", "grw-affine",
                        "thm21-direct-product", "thm22-constant-warping"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  EXPECT_THROW(catalog_scenario("no-such-scenario"), ValidationError);
}

TEST(Catalog, SphereLemma11) {
  const ReportFile rf = run(catalog_scenario("sphere-lemma11"));
  ASSERT_EQ(rf.suites.size(), 1u);
  EXPECT_EQ(rf.suites[0].report.checks.size(), 4u);
  EXPECT_TRUE(rf.pass());
  Overrides strict;
  strict.tolerance = 1e-15;
  EXPECT_FALSE(run(catalog_scenario("sphere-lemma11"), strict).pass());
}

TEST(Catalog, GoldenFailures) {
  // Every failing check across the catalog. Anything else failing is a regression.
  const std::map<std::string, std::set<std::string>> expected = {
      {"grw-exponential", {"grw/ricci_soliton_form"}},
      {"polar-warped", {"lie_split/operator_identity"}},
      {"sphere-as-warped", {"lie_split/operator_identity"}},
      {"thm22-nonconstant-warping", {"gradient_induced_solitons/induced_base_gradient_soliton"}},
  };
  for (const auto& name : catalog()) {
    const auto it = expected.find(name);
    const std::set<std::string> want = it == expected.end() ? std::set<std::string>{} : it->second;
    EXPECT_EQ(failing_checks(run(catalog_scenario(name))), want) << name;
  }
}

TEST(Catalog, NonConstantWarpingSkipsFiberCheck) {
  const ReportFile rf = run(catalog_scenario("thm22-nonconstant-warping"));
  for (const auto& s : rf.suites)
    if (const Check* c = s.report.find("induced_fiber_gradient_soliton")) {
      EXPECT_EQ(c->status, Status::skipped);
    }
}

TEST(Report, SchemaShape) {
  const json j = to_json(run(catalog_scenario("sphere-lemma11")));
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_EQ(j.at("scenario"), "sphere-lemma11");
  EXPECT_TRUE(j.at("pass").get<bool>());
  const json& s = j.at("suites").at(0);
  EXPECT_EQ(s.at("suite"), "lemma11");
  EXPECT_EQ(s.at("provenance").at("seed"), 42);
  EXPECT_EQ(s.at("provenance").at("count"), 64);
  EXPECT_EQ(s.at("provenance").at("n_conv"), 2);
  for (const auto& c : s.at("checks")) {
    EXPECT_TRUE(c.contains("name"));
    EXPECT_TRUE(c.contains("max_residual"));
    EXPECT_TRUE(c.contains("tolerance"));
    EXPECT_EQ(c.at("status"), "PASS");
  }
}

TEST(Report, ErrorsBecomeNullResiduals) {
  ReportFile rf{"x", {}};
  SuiteReport r{"soliton", {}, {}, {}};
  r.add({"error", std::nan(""), 1e-8, Status::error, "boom"});
  rf.suites.push_back({"M", r});
  const json j = to_json(rf);
  EXPECT_TRUE(j["suites"][0]["checks"][0]["max_residual"].is_null());
  EXPECT_EQ(j["suites"][0]["checks"][0]["status"], "FAILED-WITH-ERROR");
  EXPECT_FALSE(j["pass"].get<bool>());
}

TEST(Determinism, ByteIdenticalReports) {
  for (const auto& name : catalog()) {
    const Scenario sc = catalog_scenario(name);
    const std::string a = dump_report(run(sc));
    EXPECT_EQ(a, dump_report(run(sc))) << name;
    Overrides par;
    par.parallel = true;
    EXPECT_EQ(a, dump_report(run(sc, par))) << name;
  }
}

TEST(Determinism, SeedOverrideChangesSamplesOnly) {
  Overrides o;
  o.seed = 7;
  const ReportFile rf = run(catalog_scenario("sphere-unit"), o);
  for (const auto& s : rf.suites) EXPECT_EQ(s.report.provenance.seed, 7u);
  EXPECT_TRUE(rf.pass());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("suite sphere-lemma11 -q"), 0);
  EXPECT_EQ(cli("suite sphere-lemma11 -q --tol 1e-15"), 1);
  EXPECT_EQ(cli("check " + scenario_file("minimal-plane.json") + " -q"), 0);
  EXPECT_EQ(cli("check " + scenario_file("hypothesis-failed.json") + " -q"), 1);
  EXPECT_EQ(cli("check " + scenario_file("undefined-manifold.json")), 2);
  EXPECT_EQ(cli("check " + scenario_file("unknown-symbol.json")), 2);
  EXPECT_EQ(cli("suite no-such-scenario"), 2);
  EXPECT_EQ(cli("catalog list"), 0);
  EXPECT_EQ(cli("fd-check sphere-unit -q --h 1e-4"), 0);
  EXPECT_NE(cli("frobnicate"), 0);
}

TEST(Cli, WritesReportToExplicitPathAndEnvDirectory) {
  const fs::path dir = temp_dir("cli");
  const fs::path out = dir / "explicit.json";
  ASSERT_EQ(cli("suite sphere-lemma11 -q --out " + out.string()), 0);
  const json j = json::parse(read_file(out));
  EXPECT_EQ(j.at("scenario"), "sphere-lemma11");
  EXPECT_EQ(read_file(out), dump_report(run(catalog_scenario("sphere-lemma11"))));

  const fs::path env_dir = dir / "env";
  const std::string cmd = std::string(kReportDirEnv) + "=" + env_dir.string() + " " + WARPSOL_CLI +
                          " suite sphere-unit -q >/dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(env_dir / "sphere-unit.json"));

  EXPECT_EQ(cli("suite sphere-lemma11 -q --out /proc/warpsol-cannot-write/r.json"), 3);
  fs::remove_all(dir);
}
