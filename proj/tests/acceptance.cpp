// Acceptance criteria runner: `acceptance --criterion N` prints one
// PASS/FAIL line for criterion N (1..12); without the flag it runs all.

#include "warpsol/catalog.hpp"
#include "warpsol/runner.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace warpsol;

namespace {

const SamplePlan kPlan{64, 42, 0.05};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

const Check& check_of(const SuiteReport& r, const char* name) {
  if (const Check* c = r.find(name)) return *c;
  throw std::runtime_error(r.suite + " has no check '" + name + "'");
}

// residual <= tol with status PASS
void within(Outcome& o, const std::string& where, const Check& c, double tol) {
  o.require(c.status == Status::pass && c.max_residual <= tol,
            where + "/" + c.name + " = " + fmt(c.max_residual) + " (" + std::string(to_string(c.status)) + ")");
}

const SuiteReport& suite_of(const ReportFile& rf, const std::string& suite, const std::string& target) {
  for (const auto& s : rf.suites)
    if (s.report.suite == suite && s.target == target) return s.report;
  throw std::runtime_error(rf.scenario + " has no " + suite + " suite on " + target);
}

Outcome flatness_floor() {
  Outcome o;
  const ReportFile rf = run(catalog_scenario("euclidean-flat"));
  for (const auto& s : rf.suites)
    for (const auto& c : s.report.checks) within(o, s.report.suite, c, 1e-12);
  return o;
}

Outcome curvature_vs_oracle() {
  Outcome o;
  for (const char* name : {"sphere-unit", "hyperbolic-halfplane", "polar-warped"}) {
    const Scenario sc = catalog_scenario(name);
    for (const auto& chart : sc.charts) {
      const SuiteReport r = fd_suite(chart, kPlan, 1e-4, FdTolerances{1e-5, 1e-3, 1e-3});
      for (const auto& c : r.checks) within(o, std::string(name) + ":" + chart.name(), c, c.tolerance);
    }
  }
  const Scenario sphere = catalog_scenario("sphere-unit");
  const ChartManifold& s2 = sphere.chart("S2");
  double worst = 0.0;
  for (const Point& p : sample_points(s2, kPlan))
    worst = std::max(worst, max_abs(Matrix(ricci(s2, p) - s2.metric_at(p))));
  o.require(worst <= 1e-8, "sphere |Ric - g| = " + fmt(worst));
  return o;
}

Outcome scaled_hyperbolic_scalar() {
  Outcome o;
  const Scenario sc = catalog_scenario("hyperbolic-halfplane");
  const ChartManifold& h = sc.chart("H2_scaled");
  double worst = 0.0;
  for (const Point& p : sample_points(h, kPlan)) worst = std::max(worst, std::fabs(scalar_curvature(h, p) + 1.0));
  o.require(worst <= 1e-8, "|r + 1| = " + fmt(worst));
  return o;
}

Outcome warped_identities() {
  Outcome o;
  for (const auto& [name, wp] : {std::pair{"sphere-as-warped", "S2"}, std::pair{"polar-warped", "polar"}}) {
    const SuiteReport r = verify_lemma11(catalog_scenario(name).warped_product(wp), kPlan, 1e-8);
    o.require(r.checks.size() == 4, std::string(name) + ": expected 4 identities");
    for (const auto& c : r.checks) within(o, name, c, 1e-8);
  }
  return o;
}

Outcome lie_split_and_operator_identity() {
  Outcome o;
  for (const char* name : {"sphere-as-warped", "polar-warped"}) {
    const ReportFile rf = run(catalog_scenario(name));
    for (const auto& s : rf.suites)
      if (s.report.suite == "lie_split") {
        within(o, name, check_of(s.report, "lie_split"), 1e-8);
        within(o, name, check_of(s.report, "operator_identity"), 1e-8);
      }
  }
  return o;
}

Outcome induced_solitons_direct_product() {
  Outcome o;
  const ReportFile rf = run(catalog_scenario("thm21-direct-product"));
  const SuiteReport& r = suite_of(rf, "induced_solitons", "M");
  for (const char* c : {"induced_base_soliton", "induced_fiber_soliton", "fiber_mu_spread"})
    within(o, "induced", check_of(r, c), 1e-9);
  return o;
}

Outcome gradient_induced_solitons_proviso() {
  Outcome o;
  const ReportFile rf = run(catalog_scenario("thm22-constant-warping"));
  const SuiteReport& r = suite_of(rf, "gradient_induced_solitons", "M");
  within(o, "constant f", check_of(r, "induced_base_gradient_soliton"), 1e-9);
  within(o, "constant f", check_of(r, "induced_fiber_gradient_soliton"), 1e-9);
  const ReportFile nc = run(catalog_scenario("thm22-nonconstant-warping"));
  const Check& fiber = check_of(suite_of(nc, "gradient_induced_solitons", "polar"), "induced_fiber_gradient_soliton");
  o.require(fiber.status == Status::skipped,
            "non-constant f: fiber check is " + std::string(to_string(fiber.status)) + ", not SKIPPED");
  return o;
}

Outcome killing_conformal_and_warping_condition() {
  Outcome o;
  const ReportFile kr = run(catalog_scenario("killing-sphere"));
  const SuiteReport& k = suite_of(kr, "killing_conformal", "S2");
  within(o, "killing", check_of(k, "killing_einstein"), 1e-8);
  within(o, "killing", check_of(k, "killing_factor"), 1e-8);
  const ReportFile cr = run(catalog_scenario("conformal-product"));
  const SuiteReport& c = suite_of(cr, "killing_conformal", "P");
  within(o, "conformal", check_of(c, "conformal_einstein_factor"), 1e-8);
  within(o, "conformal", check_of(c, "conformal_fitted_factor"), 1e-8);

  // ρ = μ/2, ξ_B(f) = 0, β = (n - 1)k²; and f = 1, ρ = 0, μ = 2, β = 1, k = 0, n = 2.
  const double a = thm35_warping_residual(1.7, 0.0, 1.25, 2.5, 2.0 * 0.25, 0.5, 3);
  const double b = thm35_warping_residual(1.0, 0.0, 0.0, 2.0, 1.0, 0.0, 2);
  o.require(a == 0.0, "cancellation example 1 = " + fmt(a));
  o.require(b == 0.0, "cancellation example 2 = " + fmt(b));
  return o;
}

Outcome concurrent_direct_product() {
  Outcome o;
  const Scenario sc = catalog_scenario("direct-product-concurrent");
  const WarpedProduct& wp = sc.warped_product("M");
  for (const char* f : {"xi_B", "xi_F"}) {
    const ChartManifold& m = std::string(f) == "xi_B" ? wp.base() : wp.fiber();
    const FieldClass fc = classify_field(m, sc.field(f).vector(), kPlan, 1e-10);
    o.require(fc.kind == FieldKind::concurrent && fc.concurrent_residual <= 1e-10,
              std::string(f) + " classified " + std::string(to_string(fc.kind)));
  }
  const ReportFile rf = run(sc);
  const SuiteReport& r = suite_of(rf, "concurrent", "M");
  within(o, "concurrent", check_of(r, "mu_equals_2"), 1e-12);
  within(o, "concurrent", check_of(r, "lambda_relation"), 1e-12);
  for (const char* c : {"ricci_flat_M", "ricci_flat_B", "ricci_flat_F", "gradient_potential_M", "gradient_potential_B",
                        "gradient_potential_F"})
    within(o, "concurrent", check_of(r, c), 1e-9);
  return o;
}

Outcome grw_branches() {
  Outcome o;
  for (const auto& [name, target] : {std::pair{"grw-static", "static"}, std::pair{"grw-milne", "milne"}}) {
    const ReportFile rf = run(catalog_scenario(name));
    const SuiteReport& r = suite_of(rf, "grw", target);
    for (const char* c : {"potential_derivative", "soliton_field_is_gradient", "hessian_eq_fdot_g", "lie_eq_2fdot_g",
                          "ricci_soliton_form"})
      within(o, name, check_of(r, c), 1e-8);
  }
  const ReportFile mr = run(catalog_scenario("grw-milne"));
  const SuiteReport& milne = suite_of(mr, "grw", "milne");
  within(o, "grw-milne", check_of(milne, "ricci_flat_branch"), 1e-8);
  const Scenario affine = catalog_scenario("grw-affine");
  const EinsteinFit fit = einstein_fit(affine.warped_product("affine").product(), kPlan);
  o.require(fit.max_residual <= 1e-6, "affine einstein_fit residual = " + fmt(fit.max_residual));
  return o;
}

Outcome gradient_equivalence_everywhere() {
  Outcome o;
  int seen = 0;
  for (const auto& name : catalog()) {
    const ReportFile rf = run(catalog_scenario(name));
    for (const auto& s : rf.suites)
      for (const auto& c : s.report.checks)
        if (c.name == "gradient_equivalence") {
          ++seen;
          within(o, name + ":" + s.report.suite, c, 1e-9);
        }
  }
  o.require(seen > 0, "no catalog instance carries a potential");
  if (o.pass) o.detail = std::to_string(seen) + " instances";
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& name : catalog()) {
    const Scenario sc = catalog_scenario(name);
    const std::string first = dump_report(run(sc));
    o.require(first == dump_report(run(sc)), name + " differs between runs");
  }
  return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Outcome()>>> all = {
      {"flatness floor on euclidean-flat", flatness_floor},
      {"curvature agrees with the finite-difference oracle", curvature_vs_oracle},
      {"scaled hyperbolic chart has r = -1", scaled_hyperbolic_scalar},
      {"warped-product connection and Ricci identities", warped_identities},
      {"split Lie derivative and operator identity", lie_split_and_operator_identity},
      {"induced base and fiber solitons", induced_solitons_direct_product},
      {"induced gradient solitons and constant-warping proviso", gradient_induced_solitons_proviso},
      {"Killing/conformal characterisations and warping condition", killing_conformal_and_warping_condition},
      {"concurrent direct product", concurrent_direct_product},
      {"GRW soliton checks and branches", grw_branches},
      {"gradient equivalence on every potential", gradient_equivalence_everywhere},
      {"byte-identical reports", determinism},
  };
  return all;
}

bool report(std::size_t n) {
  const auto& [title, fn] = criteria()[n - 1];
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("error: ") + e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2zu %s  %s (%.0f ms)%s%s\n", n, o.pass ? "PASS" : "FAIL", title, ms,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpsol acceptance criteria"};
  std::optional<std::size_t> which;
  app.add_option("--criterion", which, "Criterion number")->check(CLI::Range(std::size_t{1}, criteria().size()));
  CLI11_PARSE(app, argc, argv);

  if (which) return report(*which) ? 0 : 1;
  bool all = true;
  for (std::size_t n = 1; n <= criteria().size(); ++n) all = report(n) && all;
  return all ? 0 : 1;
}
