#pragma once

// Suite orchestration and the JSON report format.

#include "warpsol/scenario.hpp"
#include "warpsol/soliton.hpp"
#include "warpsol/suites.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <string>
#include <vector>

#ifndef WARPSOL_VERSION
#define WARPSOL_VERSION "0.0.0"
#endif

namespace warpsol {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kEngineVersion = WARPSOL_VERSION;
inline constexpr const char* kReportDirEnv = "WARPSOL_REPORT_DIR";

struct Overrides {
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  bool parallel = false;
};

struct SuiteResult {
  std::string target;
  SuiteReport report;
};

struct ReportFile {
  std::string scenario;
  std::vector<SuiteResult> suites;

  bool pass() const {
    for (const auto& s : suites)
      if (!s.report.passed()) return false;
    return true;
  }
};

inline int default_n_conv(const Scenario& sc, const SuiteSpec& s) {
  if (!needs_warped(s.type)) return static_cast<int>(sc.chart(s.target).dim());
  const WarpedProduct& wp = sc.warped_product(s.target);
  if (s.type == SuiteType::grw) return static_cast<int>(wp.fiber_dim());
  return static_cast<int>(wp.product().dim());
}

inline SuiteReport run_suite_unchecked(const Scenario& sc, const SuiteSpec& s) {
  const int n_conv = s.n_conv.value_or(default_n_conv(sc, s));
  const SolitonParams params(s.lambda.value_or(0.0), s.pressure, n_conv);
  auto vec = [&](const std::optional<std::string>& n) { return sc.field(*n).vector(); };
  auto sca = [&](const std::optional<std::string>& n) { return sc.field(*n).scalar(); };

  switch (s.type) {
    case SuiteType::curvature: return curvature_suite(sc.chart(s.target), s.curvature, s.plan, s.tolerance);
    case SuiteType::fd_check: return fd_suite(sc.chart(s.target), s.plan, s.h, s.fd_tol);
    case SuiteType::soliton: {
      std::optional<VectorField> xi;
      std::optional<ScalarField> phi;
      if (s.field) xi = vec(s.field);
      if (s.potential) phi = sca(s.potential);
      return soliton_suite(sc.chart(s.target), xi, phi, params, s.plan, s.tolerance);
    }
    case SuiteType::classify:
      return classify_suite(sc.chart(s.target), vec(s.field), s.classify, s.plan, s.tolerance);
    case SuiteType::einstein:
      return einstein_suite(sc.chart(s.target), s.einstein_constant, s.plan, s.tolerance);
    default: break;
  }
  const WarpedProduct& wp = sc.warped_product(s.target);
  switch (s.type) {
    case SuiteType::lemma11: return verify_lemma11(wp, s.plan, s.tolerance);
    case SuiteType::lie_split:
      return lie_split_suite(wp, vec(s.base_field), vec(s.fiber_field), s.plan, s.tolerance);
    case SuiteType::induced_solitons:
      return induced_solitons(wp, vec(s.base_field), vec(s.fiber_field), params, s.plan, s.tolerance).report;
    case SuiteType::gradient_induced_solitons:
      return gradient_induced_solitons(wp, sca(s.potential), params, s.plan, s.tolerance);
    case SuiteType::killing_conformal:
      return killing_conformal_suite(wp, vec(s.base_field), vec(s.fiber_field), params, s.plan, s.tolerance);
    case SuiteType::concurrent:
      return concurrent_suite(wp, vec(s.base_field), vec(s.fiber_field), params, s.plan, s.tolerance);
    case SuiteType::grw: return grw_suite(wp, sca(s.potential), params, s.plan, s.tolerance);
    case SuiteType::warping_condition:
      return warping_condition_suite(wp, vec(s.base_field), vec(s.fiber_field), params, s.plan, s.tolerance);
    default: break;
  }
  throw ValidationError(std::string(to_string(s.type)), "unhandled suite type");
}

/// Runs one suite; engine errors become a single HYPOTHESIS-FAILED or
/// FAILED-WITH-ERROR entry instead of propagating.
inline SuiteReport run_suite(const Scenario& sc, const SuiteSpec& s) {
  const std::string name(to_string(s.type));
  int n_conv = 0;
  try {
    n_conv = s.n_conv.value_or(default_n_conv(sc, s));
  } catch (const std::exception&) {
  }
  const Provenance prov{s.plan.seed, s.plan.count, n_conv};
  try {
    return run_suite_unchecked(sc, s);
  } catch (const HypothesisFailed& e) {
    SuiteReport rep{name, {}, prov, {}};
    rep.add({"hypothesis", e.max_residual(), s.tolerance, Status::hypothesis_failed, e.what()});
    return rep;
  } catch (const std::exception& e) {
    SuiteReport rep{name, {}, prov, {}};
    rep.add({"error", std::nan(""), s.tolerance, Status::error, e.what()});
    return rep;
  }
}

inline Scenario apply_overrides(Scenario sc, const Overrides& o) {
  for (auto& s : sc.suites) {
    if (o.tolerance) s.tolerance = *o.tolerance;
    if (o.seed) s.plan.seed = *o.seed;
    if (o.count) s.plan.count = *o.count;
  }
  return sc;
}

inline ReportFile run(const Scenario& scenario, const Overrides& overrides = {}) {
  const Scenario sc = apply_overrides(scenario, overrides);
  ReportFile out{sc.name, {}};
  if (overrides.parallel) {
    std::vector<std::future<SuiteReport>> jobs;
    for (const auto& s : sc.suites)
      jobs.push_back(std::async(std::launch::async, [&sc, &s] { return run_suite(sc, s); }));
    for (std::size_t i = 0; i < jobs.size(); ++i)
      out.suites.push_back({sc.suites[i].target, jobs[i].get()});
  } else {
    for (const auto& s : sc.suites) out.suites.push_back({s.target, run_suite(sc, s)});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace detail

inline json to_json(const SuiteReport& r, const std::string& target) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json jc = {{"name", c.name},
               {"max_residual", detail::number_or_null(c.max_residual)},
               {"tolerance", c.tolerance},
               {"status", std::string(to_string(c.status))}};
    if (!c.message.empty()) jc["message"] = c.message;
    checks.push_back(std::move(jc));
  }
  json j = {{"suite", r.suite},
            {"target", target},
            {"checks", std::move(checks)},
            {"provenance",
             {{"seed", r.provenance.seed}, {"count", r.provenance.count}, {"n_conv", r.provenance.n_conv}}},
            {"pass", r.passed()}};
  if (!r.notes.empty()) {
    json notes = json::object();
    for (const auto& [k, v] : r.notes) notes[k] = detail::number_or_null(v);
    j["notes"] = std::move(notes);
  }
  return j;
}

inline json to_json(const ReportFile& rf) {
  json suites = json::array();
  for (const auto& s : rf.suites) suites.push_back(to_json(s.report, s.target));
  return {{"schema_version", kSchemaVersion},
          {"scenario", rf.scenario},
          {"engine_version", kEngineVersion},
          {"suites", std::move(suites)},
          {"pass", rf.pass()}};
}

inline std::string dump_report(const ReportFile& rf) { return to_json(rf).dump(2) + "\n"; }

/// Explicit path wins; otherwise $WARPSOL_REPORT_DIR/<scenario>.json; empty
/// when neither is set.
inline std::filesystem::path report_path(const std::optional<std::string>& explicit_path,
                                         const std::string& scenario) {
  if (explicit_path) return *explicit_path;
  if (const char* dir = std::getenv(kReportDirEnv); dir && *dir)
    return std::filesystem::path(dir) / (scenario + ".json");
  return {};
}

inline void write_report(const ReportFile& rf, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to " + path.string());
  out << dump_report(rf);
  if (!out) throw std::runtime_error("failed writing report to " + path.string());
}

/// One line per check, for terminals.
inline std::string summary(const ReportFile& rf) {
  std::string s = "scenario " + rf.scenario + "\n";
  char buf[64];
  for (const auto& r : rf.suites) {
    s += "  " + r.report.suite + " [" + r.target + "]\n";
    for (const auto& c : r.report.checks) {
      std::snprintf(buf, sizeof buf, "%.3e / %.1e", c.max_residual, c.tolerance);
      s += "    " + std::string(to_string(c.status)) + "  " + c.name + "  " + buf;
      if (!c.message.empty()) s += "  (" + c.message + ")";
      s += "\n";
    }
  }
  s += rf.pass() ? "PASS\n" : "FAIL\n";
  return s;
}

}  // namespace warpsol
