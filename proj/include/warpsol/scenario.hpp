#pragma once

// JSON scenario files: charts, warped products, fields and suite invocations.
// Everything is parsed and cross-checked at load time.

#include "warpsol/error.hpp"
#include "warpsol/manifold.hpp"
#include "warpsol/suites.hpp"
#include "warpsol/warped.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace warpsol {

using json = nlohmann::json;

struct FieldDef {
  std::string name;
  std::string chart;
  std::variant<ScalarField, VectorField> value;

  bool is_scalar() const { return std::holds_alternative<ScalarField>(value); }
  const ScalarField& scalar() const { return std::get<ScalarField>(value); }
  const VectorField& vector() const { return std::get<VectorField>(value); }
};

enum class SuiteType {
  curvature,
  fd_check,
  soliton,
  classify,
  einstein,
  lemma11,
  lie_split,
  induced_solitons,
  gradient_induced_solitons,
  killing_conformal,
  concurrent,
  grw,
  warping_condition,
};

inline constexpr std::pair<SuiteType, std::string_view> kSuiteNames[] = {
    {SuiteType::curvature, "curvature"},
    {SuiteType::fd_check, "fd_check"},
    {SuiteType::soliton, "soliton"},
    {SuiteType::classify, "classify"},
    {SuiteType::einstein, "einstein"},
    {SuiteType::lemma11, "lemma11"},
    {SuiteType::lie_split, "lie_split"},
    {SuiteType::induced_solitons, "induced_solitons"},
    {SuiteType::gradient_induced_solitons, "gradient_induced_solitons"},
    {SuiteType::killing_conformal, "killing_conformal"},
    {SuiteType::concurrent, "concurrent"},
    {SuiteType::grw, "grw"},
    {SuiteType::warping_condition, "warping_condition"},
};

inline std::string_view to_string(SuiteType t) {
  for (const auto& [k, s] : kSuiteNames)
    if (k == t) return s;
  return "?";
}

inline bool needs_warped(SuiteType t) {
  return t != SuiteType::curvature && t != SuiteType::fd_check && t != SuiteType::soliton &&
         t != SuiteType::classify && t != SuiteType::einstein;
}

inline double default_tolerance(SuiteType t) {
  switch (t) {
    case SuiteType::induced_solitons:
    case SuiteType::gradient_induced_solitons:
    case SuiteType::concurrent: return 1e-9;
    default: return 1e-8;
  }
}

struct SuiteSpec {
  SuiteType type = SuiteType::curvature;
  std::string target;  // chart name, or warped-product name for warped suites
  std::optional<std::string> field, potential, base_field, fiber_field;
  std::optional<double> lambda;
  double pressure = 0.0;
  std::optional<int> n_conv;
  double tolerance = 1e-8;
  SamplePlan plan;
  double h = kFdStep;
  FdTolerances fd_tol;
  CurvatureExpectations curvature;
  ClassifyExpectations classify;
  std::optional<double> einstein_constant;
};

class Scenario {
 public:
  std::string name;
  std::string description;
  std::vector<ChartManifold> charts;  // declared charts, warped products and GRW bases
  std::vector<WarpedProduct> warped;
  std::vector<FieldDef> fields;
  std::vector<SuiteSpec> suites;

  const ChartManifold* find_chart(std::string_view n) const {
    for (const auto& c : charts)
      if (c.name() == n) return &c;
    return nullptr;
  }
  const WarpedProduct* find_warped(std::string_view n) const {
    for (const auto& w : warped)
      if (w.product().name() == n) return &w;
    return nullptr;
  }
  const FieldDef* find_field(std::string_view n) const {
    for (const auto& f : fields)
      if (f.name == n) return &f;
    return nullptr;
  }

  const ChartManifold& chart(std::string_view n) const {
    if (auto* c = find_chart(n)) return *c;
    throw ValidationError(std::string(n), "undefined manifold");
  }
  const WarpedProduct& warped_product(std::string_view n) const {
    if (auto* w = find_warped(n)) return *w;
    throw ValidationError(std::string(n), "undefined warped product");
  }
  const FieldDef& field(std::string_view n) const {
    if (auto* f = find_field(n)) return *f;
    throw ValidationError(std::string(n), "undefined field");
  }
};

namespace detail {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, what); }

  const json& member(const json& obj, const char* key, const std::string& ctx) const {
    if (!obj.is_object()) fail(ctx + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ctx + ": missing '" + key + "'");
    return *it;
  }

  std::string string(const json& v, const std::string& ctx) const {
    if (!v.is_string()) fail(ctx + ": expected a string");
    return v.get<std::string>();
  }

  double number(const json& v, const std::string& ctx) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    fail(ctx + ": expected a number");
  }

  std::optional<double> opt_number(const json& obj, const char* key, const std::string& ctx) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return number(*it, ctx + "." + key);
  }

  std::optional<std::string> opt_string(const json& obj, const char* key, const std::string& ctx) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return string(*it, ctx + "." + key);
  }

  const json& array(const json& v, const std::string& ctx) const {
    if (!v.is_array()) fail(ctx + ": expected an array");
    return v;
  }

 private:
  std::string source_;
};

inline void check_keys(const Reader& r, const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& ctx) {
  if (!obj.is_object()) r.fail(ctx + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) r.fail(ctx + ": unknown key '" + it.key() + "'");
  }
}

inline ChartManifold read_chart(const Reader& r, const json& j) {
  check_keys(r, j, {"name", "coords", "domain", "metric", "signature"}, "manifold");
  const std::string name = r.string(r.member(j, "name", "manifold"), "manifold.name");
  const std::string ctx = "manifold '" + name + "'";
  std::vector<std::string> coords;
  for (const auto& c : r.array(r.member(j, "coords", ctx), ctx + ".coords"))
    coords.push_back(r.string(c, ctx + ".coords"));
  std::vector<Interval> domain;
  for (const auto& iv : r.array(r.member(j, "domain", ctx), ctx + ".domain")) {
    if (!iv.is_array() || iv.size() != 2) r.fail(ctx + ".domain: each interval is [lower, upper]");
    domain.push_back({r.number(iv[0], ctx + ".domain"), r.number(iv[1], ctx + ".domain")});
  }
  std::vector<std::vector<std::string>> metric;
  for (const auto& row : r.array(r.member(j, "metric", ctx), ctx + ".metric")) {
    std::vector<std::string> entries;
    for (const auto& e : r.array(row, ctx + ".metric"))
      entries.push_back(e.is_number() ? json(e).dump() : r.string(e, ctx + ".metric"));
    metric.push_back(std::move(entries));
  }
  std::optional<Signature> sig;
  if (auto it = j.find("signature"); it != j.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
        !(*it)[1].is_number_integer())
      r.fail(ctx + ".signature: expected [plus, minus]");
    sig = Signature{(*it)[0].get<int>(), (*it)[1].get<int>()};
  }
  // Metric rows may be ragged (upper triangle only); pad to square.
  for (std::size_t i = 0; i < metric.size(); ++i)
    if (metric[i].size() + i == coords.size())
      metric[i].insert(metric[i].begin(), i, "0");
  return ChartManifold::parse(name, coords, domain, metric, sig);
}

inline SamplePlan read_plan(const Reader& r, const json& suite, const std::string& ctx) {
  SamplePlan plan;
  auto it = suite.find("plan");
  if (it == suite.end()) return plan;
  check_keys(r, *it, {"count", "seed", "margin"}, ctx + ".plan");
  if (auto c = it->find("count"); c != it->end()) {
    if (!c->is_number_unsigned() || c->get<std::size_t>() == 0) r.fail(ctx + ".plan.count: expected a positive integer");
    plan.count = c->get<std::size_t>();
  }
  if (auto s = it->find("seed"); s != it->end()) {
    if (!s->is_number_unsigned()) r.fail(ctx + ".plan.seed: expected a non-negative integer");
    plan.seed = s->get<std::uint64_t>();
  }
  if (auto m = r.opt_number(*it, "margin", ctx + ".plan")) plan.margin = *m;
  return plan;
}

inline SuiteSpec read_suite(const Reader& r, const json& j, std::size_t index) {
  const std::string ctx = "suites[" + std::to_string(index) + "]";
  check_keys(r, j,
             {"type", "manifold", "warped", "field", "potential", "base_field", "fiber_field",
              "lambda", "pressure", "n_conv", "tolerance", "plan", "h", "fd_tolerance", "expect"},
             ctx);
  SuiteSpec s;
  const std::string type = r.string(r.member(j, "type", ctx), ctx + ".type");
  bool known = false;
  for (const auto& [k, n] : kSuiteNames)
    if (n == type) {
      s.type = k;
      known = true;
    }
  if (!known) throw ValidationError(ctx, "unknown suite type '" + type + "'");

  const char* target_key = needs_warped(s.type) ? "warped" : "manifold";
  s.target = r.string(r.member(j, target_key, ctx), ctx + "." + target_key);
  s.field = r.opt_string(j, "field", ctx);
  s.potential = r.opt_string(j, "potential", ctx);
  s.base_field = r.opt_string(j, "base_field", ctx);
  s.fiber_field = r.opt_string(j, "fiber_field", ctx);
  s.lambda = r.opt_number(j, "lambda", ctx);
  s.pressure = r.opt_number(j, "pressure", ctx).value_or(0.0);
  if (auto it = j.find("n_conv"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int>() < 1) r.fail(ctx + ".n_conv: expected an integer >= 1");
    s.n_conv = it->get<int>();
  }
  s.tolerance = r.opt_number(j, "tolerance", ctx).value_or(default_tolerance(s.type));
  s.plan = read_plan(r, j, ctx);
  s.h = r.opt_number(j, "h", ctx).value_or(kFdStep);
  if (auto it = j.find("fd_tolerance"); it != j.end()) {
    check_keys(r, *it, {"christoffel", "riemann", "ricci"}, ctx + ".fd_tolerance");
    s.fd_tol.christoffel = r.opt_number(*it, "christoffel", ctx).value_or(s.fd_tol.christoffel);
    s.fd_tol.riemann = r.opt_number(*it, "riemann", ctx).value_or(s.fd_tol.riemann);
    s.fd_tol.ricci = r.opt_number(*it, "ricci", ctx).value_or(s.fd_tol.ricci);
  }
  if (auto it = j.find("expect"); it != j.end()) {
    const std::string ectx = ctx + ".expect";
    check_keys(r, *it, {"flat", "einstein", "scalar", "sectional", "kind", "sigma", "alpha", "constant"}, ectx);
    if (auto f = it->find("flat"); f != it->end()) {
      if (!f->is_boolean()) r.fail(ectx + ".flat: expected a boolean");
      s.curvature.flat = f->get<bool>();
    }
    s.curvature.einstein = r.opt_number(*it, "einstein", ectx);
    s.curvature.scalar = r.opt_number(*it, "scalar", ectx);
    s.curvature.sectional = r.opt_number(*it, "sectional", ectx);
    if (auto k = r.opt_string(*it, "kind", ectx)) {
      s.classify.kind = field_kind_from_name(*k);
      if (!s.classify.kind) throw ValidationError(ectx, "unknown field kind '" + *k + "'");
    }
    s.classify.sigma = r.opt_number(*it, "sigma", ectx);
    s.classify.alpha = r.opt_number(*it, "alpha", ectx);
    s.einstein_constant = r.opt_number(*it, "constant", ectx);
  }
  return s;
}

inline void require_field(const Scenario& sc, const std::optional<std::string>& name,
                          const char* role, const std::string& chart, bool scalar,
                          const std::string& ctx) {
  if (!name) throw ValidationError(ctx, std::string("missing '") + role + "'");
  const FieldDef& f = sc.field(*name);
  if (f.is_scalar() != scalar)
    throw ValidationError(*name, std::string(role) + " must be a " + (scalar ? "scalar" : "vector") + " field");
  if (f.chart != chart)
    throw ValidationError(*name, std::string(role) + " must live on '" + chart + "', not '" + f.chart + "'");
}

inline void validate_suite(const Scenario& sc, const SuiteSpec& s, std::size_t index) {
  const std::string ctx = "suites[" + std::to_string(index) + "] (" + std::string(to_string(s.type)) + ")";
  if (s.tolerance <= 0.0 || std::isnan(s.tolerance)) throw ValidationError(ctx, "tolerance must be positive");
  if (!(s.h > 0.0)) throw ValidationError(ctx, "h must be positive");
  s.plan.validate();
  const bool soliton_like = s.type == SuiteType::soliton || s.type == SuiteType::induced_solitons ||
                            s.type == SuiteType::gradient_induced_solitons ||
                            s.type == SuiteType::killing_conformal || s.type == SuiteType::concurrent ||
                            s.type == SuiteType::grw || s.type == SuiteType::warping_condition;
  if (soliton_like && !s.lambda) throw ValidationError(ctx, "missing 'lambda'");

  if (!needs_warped(s.type)) {
    sc.chart(s.target);
    switch (s.type) {
      case SuiteType::soliton:
        if (!s.field && !s.potential) throw ValidationError(ctx, "needs 'field' and/or 'potential'");
        if (s.field) require_field(sc, s.field, "field", s.target, false, ctx);
        if (s.potential) require_field(sc, s.potential, "potential", s.target, true, ctx);
        break;
      case SuiteType::classify: require_field(sc, s.field, "field", s.target, false, ctx); break;
      default: break;
    }
    return;
  }
  const WarpedProduct& wp = sc.warped_product(s.target);
  const std::string product = wp.product().name();
  switch (s.type) {
    case SuiteType::lie_split:
    case SuiteType::induced_solitons:
    case SuiteType::killing_conformal:
    case SuiteType::concurrent:
    case SuiteType::warping_condition:
      require_field(sc, s.base_field, "base_field", wp.base().name(), false, ctx);
      require_field(sc, s.fiber_field, "fiber_field", wp.fiber().name(), false, ctx);
      break;
    case SuiteType::gradient_induced_solitons:
      require_field(sc, s.potential, "potential", product, true, ctx);
      break;
    case SuiteType::grw:
      if (!wp.is_grw()) throw ValidationError(ctx, "'" + product + "' is not a GRW spacetime");
      require_field(sc, s.potential, "potential", wp.base().name(), true, ctx);
      break;
    default: break;
  }
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text, const std::string& source) {
  const detail::Reader r(source);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    r.fail("byte " + std::to_string(e.byte) + ": " + e.what());
  }
  detail::check_keys(r, root, {"name", "description", "manifolds", "warped", "fields", "suites"}, "scenario");

  Scenario sc;
  sc.name = r.string(r.member(root, "name", "scenario"), "scenario.name");
  if (auto d = r.opt_string(root, "description", "scenario")) sc.description = *d;

  std::set<std::string> names;
  auto claim = [&](const std::string& n) {
    if (n.empty()) throw ValidationError(n, "empty name");
    if (!names.insert(n).second) throw ValidationError(n, "name defined twice");
  };

  if (auto it = root.find("manifolds"); it != root.end())
    for (const auto& m : r.array(*it, "manifolds")) {
      sc.charts.push_back(detail::read_chart(r, m));
      claim(sc.charts.back().name());
      validate_chart(sc.charts.back(), kWarpingValidationPlan);
    }

  if (auto it = root.find("warped"); it != root.end())
    for (const auto& w : r.array(*it, "warped")) {
      const std::string name = r.string(r.member(w, "name", "warped"), "warped.name");
      const std::string ctx = "warped '" + name + "'";
      const bool grw = w.value("grw", false);
      const std::string fiber_name = r.string(r.member(w, "fiber", ctx), ctx + ".fiber");
      const std::string f_text = r.string(r.member(w, "f", ctx), ctx + ".f");
      const ChartManifold fiber = sc.chart(fiber_name);
      if (grw) {
        detail::check_keys(r, w, {"name", "grw", "time", "interval", "fiber", "f"}, ctx);
        const std::string t = r.string(r.member(w, "time", ctx), ctx + ".time");
        const json& iv = r.member(w, "interval", ctx);
        if (!iv.is_array() || iv.size() != 2) r.fail(ctx + ".interval: expected [lower, upper]");
        const ChartManifold base =
            time_line(t, {r.number(iv[0], ctx), r.number(iv[1], ctx)}, name + "/base");
        claim(base.name());
        sc.warped.push_back(build_grw(base, ScalarField::parse(base, f_text), fiber, name));
        sc.charts.push_back(base);
      } else {
        detail::check_keys(r, w, {"name", "base", "fiber", "f"}, ctx);
        const ChartManifold base = sc.chart(r.string(r.member(w, "base", ctx), ctx + ".base"));
        sc.warped.push_back(build_warped(base, fiber, ScalarField::parse(base, f_text), name));
      }
      claim(name);
      validate_chart(sc.warped.back().product(), kWarpingValidationPlan);
      sc.charts.push_back(sc.warped.back().product());
    }

  if (auto it = root.find("fields"); it != root.end())
    for (const auto& f : r.array(*it, "fields")) {
      detail::check_keys(r, f, {"name", "chart", "vector", "scalar"}, "field");
      const std::string name = r.string(r.member(f, "name", "field"), "field.name");
      const std::string ctx = "field '" + name + "'";
      const std::string chart_name = r.string(r.member(f, "chart", ctx), ctx + ".chart");
      const ChartManifold& chart = sc.chart(chart_name);
      const bool has_v = f.contains("vector"), has_s = f.contains("scalar");
      if (has_v == has_s) throw ValidationError(name, "field needs exactly one of 'vector' or 'scalar'");
      if (has_s) {
        sc.fields.push_back({name, chart_name, ScalarField::parse(chart, r.string(f["scalar"], ctx + ".scalar"))});
      } else {
        std::vector<std::string> comps;
        for (const auto& c : r.array(f["vector"], ctx + ".vector"))
          comps.push_back(c.is_number() ? c.dump() : r.string(c, ctx + ".vector"));
        sc.fields.push_back({name, chart_name, VectorField::parse(chart, comps)});
      }
      if (sc.find_field(name) != &sc.fields.back()) throw ValidationError(name, "field defined twice");
    }

  const json& suites = r.array(r.member(root, "suites", "scenario"), "suites");
  for (std::size_t i = 0; i < suites.size(); ++i) {
    sc.suites.push_back(detail::read_suite(r, suites[i], i));
    detail::validate_suite(sc, sc.suites.back(), i);
  }
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace warpsol
