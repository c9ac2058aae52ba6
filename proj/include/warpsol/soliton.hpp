#pragma once

// Conformal Ricci soliton residuals, special vector field classification,
// Einstein fits, and the warped-product / GRW soliton suites.
//
// All soliton checks use the undivided form  L_ξ g + 2 Ric - μ g,
// with μ = 2λ - (p + 2/n).

#include "warpsol/curvature.hpp"
#include "warpsol/error.hpp"
#include "warpsol/manifold.hpp"
#include "warpsol/report.hpp"
#include "warpsol/warped.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace warpsol {

// ---------------------------------------------------------------------------
// Pointwise residuals

inline Matrix soliton_residual(const LocalGeometry& geo, const VectorJet1& xi, double mu) {
  return lie_derivative_metric(geo.jet, xi) + 2.0 * ricci(geo) - mu * geo.g();
}

/// L_ξ g + 2 Ric - μ g
inline Matrix soliton_residual(const ChartManifold& m, const VectorField& xi,
                               const SolitonParams& params, const Point& pt) {
  return soliton_residual(local_geometry(m, pt), vector_jet(xi, pt), params.mu());
}

inline Matrix gradient_soliton_residual(const LocalGeometry& geo, const Jet2& phi, double mu) {
  return 2.0 * hessian(geo, phi) + 2.0 * ricci(geo) - mu * geo.g();
}

/// 2 H^φ + 2 Ric - μ g
inline Matrix gradient_soliton_residual(const ChartManifold& m, const ScalarField& phi,
                                        const SolitonParams& params, const Point& pt) {
  return gradient_soliton_residual(local_geometry(m, pt), eval_jet2(phi.expr, pt.span()),
                                   params.mu());
}

/// Fixed tolerance of every gradient_equivalence check.
inline constexpr double kEquivalenceTolerance = 1e-9;

/// |soliton_residual(grad φ) - gradient_soliton_residual(φ)|_∞ at a point.
inline double gradient_equivalence_residual(const LocalGeometry& geo, const Jet2& phi, double mu) {
  const Matrix a = soliton_residual(geo, gradient_jet(geo.jet, phi), mu);
  const Matrix b = gradient_soliton_residual(geo, phi, mu);
  return max_abs(Matrix(a - b));
}

/// σ̂ = tr(g^{-1} L_X g) / d
inline double conformal_factor(const LocalGeometry& geo, const VectorJet1& x) {
  const Matrix l = lie_derivative_metric(geo.jet, x);
  return geo.g_inv().cwiseProduct(l).sum() / static_cast<double>(geo.dim());
}

/// ξ♭_i - ∂_i(½ g(ξ, ξ)): vanishes when ξ = grad(½‖ξ‖²).
inline double gradient_potential_residual(const MetricJet& jet, const VectorJet1& xi) {
  const std::size_t d = jet.dim();
  const Vector flat = jet.g * xi.value;
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double dphi = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const auto jj = static_cast<Eigen::Index>(j), kk = static_cast<Eigen::Index>(k);
        dphi += 0.5 * jet.dg(i, j, k) * xi.value(jj) * xi.value(kk) +
                jet.g(jj, kk) * xi.value(jj) * xi.d(kk, static_cast<Eigen::Index>(i));
      }
    worst = std::max(worst, std::fabs(flat(static_cast<Eigen::Index>(i)) - dphi));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Field classification

enum class FieldKind { killing, conformal, concircular, concurrent, unclassified };

inline std::string_view to_string(FieldKind k) {
  switch (k) {
    case FieldKind::killing: return "killing";
    case FieldKind::conformal: return "conformal";
    case FieldKind::concircular: return "concircular";
    case FieldKind::concurrent: return "concurrent";
    case FieldKind::unclassified: return "unclassified";
  }
  return "?";
}

struct FieldClass {
  FieldKind kind = FieldKind::unclassified;
  double max_residual = 0.0;  // residual of the reported class
  double tolerance = 0.0;

  // Residuals of every candidate class, maxed over samples.
  double killing_residual = 0.0;      // |L_X g|
  double conformal_residual = 0.0;    // |L_X g - σ̂ g|
  double concircular_residual = 0.0;  // |∇X - α̂ I|
  double concurrent_residual = 0.0;   // |∇X - I|

  std::vector<double> sigma;  // σ̂ per sample, L_X g ≈ σ̂ g
  std::vector<double> alpha;  // α̂ per sample, ∇X ≈ α̂ I

  bool is_killing() const { return killing_residual <= tolerance; }
  bool is_conformal() const { return conformal_residual <= tolerance; }
  bool is_concurrent() const { return concurrent_residual <= tolerance; }
  bool is_concircular() const { return concircular_residual <= tolerance; }
};

/// Most specific of concurrent ⊂ concircular(α ≢ 0) ⊂ conformal, and
/// killing ⊂ conformal, whose residual stays within tolerance.
inline FieldClass classify_field(const ChartManifold& m, const VectorField& x,
                                 const SamplePlan& plan, double tolerance = 1e-8) {
  FieldClass fc;
  fc.tolerance = tolerance;
  MaxTracker kil, conf, circ, conc;
  double alpha_max = 0.0;
  const auto d = static_cast<Eigen::Index>(m.dim());
  for (const Point& p : sample_points(m, plan)) {
    const LocalGeometry geo = local_geometry(m, p);
    const VectorJet1 xj = vector_jet(x, p);
    const Matrix l = lie_derivative_metric(geo.jet, xj);
    const double sigma = geo.g_inv().cwiseProduct(l).sum() / static_cast<double>(d);
    const Matrix nabla = covariant_derivative(geo, xj);
    const double alpha = nabla.trace() / static_cast<double>(d);
    kil.add(max_abs(l));
    conf.add(max_abs(Matrix(l - sigma * geo.g())));
    circ.add(max_abs(Matrix(nabla - alpha * Matrix::Identity(d, d))));
    conc.add(max_abs(Matrix(nabla - Matrix::Identity(d, d))));
    alpha_max = std::max(alpha_max, std::fabs(alpha));
    fc.sigma.push_back(sigma);
    fc.alpha.push_back(alpha);
  }
  fc.killing_residual = kil.value();
  fc.conformal_residual = conf.value();
  fc.concircular_residual = circ.value();
  fc.concurrent_residual = conc.value();

  if (fc.concurrent_residual <= tolerance) {
    fc.kind = FieldKind::concurrent;
    fc.max_residual = fc.concurrent_residual;
  } else if (fc.concircular_residual <= tolerance && alpha_max > tolerance) {
    fc.kind = FieldKind::concircular;
    fc.max_residual = fc.concircular_residual;
  } else if (fc.killing_residual <= tolerance) {
    fc.kind = FieldKind::killing;
    fc.max_residual = fc.killing_residual;
  } else if (fc.conformal_residual <= tolerance) {
    fc.kind = FieldKind::conformal;
    fc.max_residual = fc.conformal_residual;
  } else {
    fc.kind = FieldKind::unclassified;
    fc.max_residual = fc.conformal_residual;
  }
  return fc;
}

// ---------------------------------------------------------------------------

struct EinsteinFit {
  double constant = 0.0;      // c in Ric ≈ c g
  double max_residual = 0.0;  // max |Ric - c g|
};

/// c is the sample average of tr(g^{-1} Ric)/d.
inline EinsteinFit einstein_fit(const ChartManifold& m, const SamplePlan& plan) {
  const auto pts = sample_points(m, plan);
  std::vector<Matrix> rics, gs;
  double sum = 0.0;
  for (const Point& p : pts) {
    const LocalGeometry geo = local_geometry(m, p);
    rics.push_back(ricci(geo));
    gs.push_back(geo.g());
    sum += geo.g_inv().cwiseProduct(rics.back()).sum() / static_cast<double>(m.dim());
  }
  EinsteinFit fit;
  fit.constant = sum / static_cast<double>(pts.size());
  MaxTracker worst;
  for (std::size_t k = 0; k < pts.size(); ++k)
    worst.add(max_abs(Matrix(rics[k] - fit.constant * gs[k])));
  fit.max_residual = worst.value();
  return fit;
}

// ---------------------------------------------------------------------------

/// λ = α + p/2 + 1/(2n) for a concircular soliton field with factor α.
struct ConcircularLambda {
  double lambda;
  SolitonKind kind;
  double bracket;  // p + 2α + 1/n, which equals 2λ
};

inline ConcircularLambda concircular_lambda(double alpha, double pressure, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double nd = static_cast<double>(n);
  const double lambda = alpha + pressure / 2.0 + 1.0 / (2.0 * nd);
  return {lambda, classify_lambda(lambda), pressure + 2.0 * alpha + 1.0 / nd};
}

/// (2ρ - μ) f² + 2 f ξ_B(f) + 2β + 2(1 - n) k²; zero when the quadratic
/// warping condition holds.
inline double thm35_warping_residual(double f_val, double xi_b_f, double rho, double mu,
                                     double beta, double k, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(f_val > 0.0)) throw std::invalid_argument("warping value must be positive");
  return (2.0 * rho - mu) * f_val * f_val + 2.0 * f_val * xi_b_f + 2.0 * beta +
         2.0 * (1.0 - static_cast<double>(n)) * k * k;
}

// ---------------------------------------------------------------------------
// Warped-product soliton suites

namespace detail {

inline Provenance provenance(const SamplePlan& plan, int n_conv) {
  return {plan.seed, plan.count, n_conv};
}

inline double max_product_soliton_residual(const WarpedProduct& wp, const VectorField& xi,
                                           double mu, std::span<const Point> pts) {
  MaxTracker worst;
  for (const Point& p : pts)
    worst.add(max_abs(soliton_residual(local_geometry(wp.product(), p), vector_jet(xi, p), mu)));
  return worst.value();
}

inline bool is_zero_field(const VectorField& v) {
  for (const auto& c : v.components)
    if (auto k = c.constant_value(); !k || *k != 0.0) return false;
  return true;
}

inline void require_riemannian(const WarpedProduct& wp, std::span<const Point> pts) {
  std::vector<Point> bs, xs;
  for (const auto& p : pts) {
    bs.push_back(wp.base_part(p));
    xs.push_back(wp.fiber_part(p));
  }
  if (!is_riemannian(wp.base(), bs) || !is_riemannian(wp.fiber(), xs))
    throw SignatureError("warped-product soliton theorems require Riemannian factors");
}

/// Max |∇f| over base parts of `pts`.
inline double max_warping_gradient(const WarpedProduct& wp, std::span<const Point> pts) {
  MaxTracker worst;
  for (const Point& p : pts) worst.add(max_abs(wp.warping_jet(wp.base_part(p)).gradient_vector()));
  return worst.value();
}

}  // namespace detail

/// The base and fiber solitons induced by a soliton on B x_f F:
///   base  (B, g_B, μ, ξ_B - n ∇^B ln f)
///   fiber (F, g_F, μ f² - 2 f ξ_B(f) + 2 f̃, f² ξ_F) at a fixed base point.
class InducedSolitons {
 public:
  InducedSolitons(WarpedProduct wp, VectorField xi_base, VectorField xi_fiber, double mu)
      : wp_(std::move(wp)), xi_base_(std::move(xi_base)), xi_fiber_(std::move(xi_fiber)), mu_(mu) {}

  double base_mu() const noexcept { return mu_; }

  /// ξ_B - n ∇^B ln f; the gradient uses the numerically inverted base metric.
  VectorJet1 base_field(const Point& b) const { return shifted_base_field(wp_, xi_base_, b); }

  VectorJet1 fiber_field(const Point& b, const Point& x) const {
    const double f = evaluate(wp_.warping().expr, b.span());
    return (f * f) * vector_jet(xi_fiber_, x);
  }

  double fiber_mu(const Point& b) const {
    const Jet2 f = wp_.warping_jet(b);
    return mu_ * f.value() * f.value() -
           2.0 * f.value() * directional_derivative(xi_base_, f, b) + 2.0 * tilde_f(wp_, b);
  }

  Matrix base_residual(const Point& b) const {
    const LocalGeometry gb = local_geometry(wp_.base(), b);
    return soliton_residual(gb, base_field(b), mu_);
  }

  Matrix fiber_residual(const Point& b, const Point& x) const {
    const LocalGeometry gf = local_geometry(wp_.fiber(), x);
    return soliton_residual(gf, fiber_field(b, x), fiber_mu(b));
  }

 private:
  WarpedProduct wp_;
  VectorField xi_base_;
  VectorField xi_fiber_;
  double mu_;
};

struct InducedSolitonsResult {
  InducedSolitons solitons;
  SuiteReport report;
};

/// Builds the induced solitons of a warped-product soliton and checks both.
/// Throws HypothesisFailed when (M, g, μ, ξ) is not itself a soliton.
inline InducedSolitonsResult induced_solitons(const WarpedProduct& wp, const VectorField& xi_base,
                                              const VectorField& xi_fiber,
                                              const SolitonParams& params, const SamplePlan& plan,
                                              double tolerance = 1e-9) {
  const auto pts = sample_points(wp.product(), plan);
  detail::require_riemannian(wp, pts);
  const double mu = params.mu();
  const double hyp =
      detail::max_product_soliton_residual(wp, wp.lift(xi_base, xi_fiber), mu, pts);
  if (!(hyp <= tolerance)) throw HypothesisFailed("(M, g, mu, xi) is not a conformal Ricci soliton", hyp);

  InducedSolitons sol(wp, xi_base, xi_fiber, mu);
  MaxTracker base, fiber;
  double mu_min = std::numeric_limits<double>::infinity(), mu_max = -mu_min;
  for (const Point& p : pts) {
    const Point b = wp.base_part(p), x = wp.fiber_part(p);
    base.add(max_abs(sol.base_residual(b)));
    fiber.add(max_abs(sol.fiber_residual(b, x)));
    const double mf = sol.fiber_mu(b);
    mu_min = std::min(mu_min, mf);
    mu_max = std::max(mu_max, mf);
  }
  SuiteReport rep{"induced_solitons", {}, detail::provenance(plan, params.n_conv()), {}};
  rep.add(Check::measured("product_soliton", hyp, tolerance));
  rep.add(Check::measured("induced_base_soliton", base.value(), tolerance));
  rep.add(Check::measured("induced_fiber_soliton", fiber.value(), tolerance));
  rep.add(Check::measured("fiber_mu_spread", mu_max - mu_min, tolerance));
  rep.notes["mu"] = mu;
  rep.notes["fiber_mu_min"] = mu_min;
  rep.notes["fiber_mu_max"] = mu_max;
  return {std::move(sol), std::move(rep)};
}

/// Number of frozen anchor points taken from the other factor.
inline constexpr std::size_t kGradientAnchors = 4;

/// Induced gradient solitons:
///   base  2H^{φ_B - n ln f} + 2Ric^B - μ g_B, φ_B = φ at a fixed fiber point;
///   fiber 2H^{φ_F} + 2Ric^F - μ f² g_F, φ_F = φ at a fixed base point,
///         only when f is constant (SKIPPED otherwise).
inline SuiteReport gradient_induced_solitons(const WarpedProduct& wp, const ScalarField& phi,
                                             const SolitonParams& params, const SamplePlan& plan,
                                             double tolerance = 1e-9) {
  const auto pts = sample_points(wp.product(), plan);
  detail::require_riemannian(wp, pts);
  const double mu = params.mu();
  const std::size_t m = wp.base_dim();

  MaxTracker hyp, equiv;
  for (const Point& p : pts) {
    const LocalGeometry geo = local_geometry(wp.product(), p);
    const Jet2 j = eval_jet2(phi.expr, p.span());
    hyp.add(max_abs(gradient_soliton_residual(geo, j, mu)));
    equiv.add(gradient_equivalence_residual(geo, j, mu));
  }
  if (!(hyp.value() <= tolerance))
    throw HypothesisFailed("(M, g, mu, phi) is not a conformal gradient Ricci soliton", hyp.value());

  const std::size_t anchors = std::min(kGradientAnchors, pts.size());
  const double nd = static_cast<double>(wp.fiber_dim());

  MaxTracker base;
  for (std::size_t a = 0; a < anchors; ++a) {
    const Point xa = wp.fiber_part(pts[a]);
    const Expr phi_b = phi.expr.remap([&](const Expr::Coord& c) {
      return c.index < m ? Expr::coord(c.index, c.name) : Expr::constant(xa[c.index - m]);
    });
    for (const Point& p : pts) {
      const Point b = wp.base_part(p);
      const LocalGeometry gb = local_geometry(wp.base(), b);
      const Jet2 psi = eval_jet2(phi_b, b.span()) - nd * log_warping_jet(wp, b);
      base.add(max_abs(gradient_soliton_residual(gb, psi, mu)));
    }
  }

  SuiteReport rep{"gradient_induced_solitons", {}, detail::provenance(plan, params.n_conv()), {}};
  rep.add(Check::measured("product_gradient_soliton", hyp.value(), tolerance));
  rep.add(Check::measured("gradient_equivalence", equiv.value(), kEquivalenceTolerance));
  rep.add(Check::measured("induced_base_gradient_soliton", base.value(), tolerance));

  const double grad_f = detail::max_warping_gradient(wp, pts);
  rep.notes["max_warping_gradient"] = grad_f;
  if (!(grad_f <= tolerance)) {
    rep.add(Check::skipped("induced_fiber_gradient_soliton", tolerance,
                           "warping function is not constant"));
    return rep;
  }
  MaxTracker fiber;
  for (std::size_t a = 0; a < anchors; ++a) {
    const Point ba = wp.base_part(pts[a]);
    const double f = evaluate(wp.warping().expr, ba.span());
    const Expr phi_f = phi.expr.remap([&](const Expr::Coord& c) {
      return c.index < m ? Expr::constant(ba[c.index]) : Expr::coord(c.index - m, c.name);
    });
    for (const Point& p : pts) {
      const Point x = wp.fiber_part(p);
      const LocalGeometry gf = local_geometry(wp.fiber(), x);
      fiber.add(max_abs(gradient_soliton_residual(gf, eval_jet2(phi_f, x.span()), mu * f * f)));
    }
  }
  rep.add(Check::measured("induced_fiber_gradient_soliton", fiber.value(), tolerance));
  return rep;
}

/// Killing / conformal characterisations on a warped-product soliton:
/// Ric = (μ/2) g for Killing fields, Ric = (μ/2 - ρ) g for conformal fields
/// with L_ξ g = 2ρ g, both-lifts-Killing with ξ_B(f) = 0, and the
/// ρ_B = ρ_F + ξ_B(ln f) criterion.
inline SuiteReport killing_conformal_suite(const WarpedProduct& wp, const VectorField& xi_base,
                                  const VectorField& xi_fiber, const SolitonParams& params,
                                  const SamplePlan& plan, double tolerance = 1e-8) {
  const auto pts = sample_points(wp.product(), plan);
  detail::require_riemannian(wp, pts);
  const double mu = params.mu();
  const VectorField xi = wp.lift(xi_base, xi_fiber);
  const double hyp = detail::max_product_soliton_residual(wp, xi, mu, pts);
  if (!(hyp <= tolerance)) throw HypothesisFailed("(M, g, mu, xi) is not a conformal Ricci soliton", hyp);

  const FieldClass cls_b = classify_field(wp.base(), xi_base, plan, tolerance);
  const FieldClass cls_f = classify_field(wp.fiber(), xi_fiber, plan, tolerance);
  const FieldClass cls = classify_field(wp.product(), xi, plan, tolerance);
  const EinsteinFit fit = einstein_fit(wp.product(), plan);

  SuiteReport rep{"killing_conformal", {}, detail::provenance(plan, params.n_conv()), {}};
  rep.add(Check::measured("product_soliton", hyp, tolerance));
  rep.notes["mu"] = mu;
  rep.notes["einstein_constant"] = fit.constant;
  rep.notes["einstein_residual"] = fit.max_residual;

  // Killing field on one factor only.
  const bool killing_case = (detail::is_zero_field(xi_fiber) && cls_b.is_killing()) ||
                            (detail::is_zero_field(xi_base) && cls_f.is_killing());
  if (killing_case && cls.is_killing()) {
    rep.add(Check::measured("killing_einstein", fit.max_residual, tolerance));
    rep.add(Check::measured("killing_factor", std::fabs(fit.constant - mu / 2.0), tolerance));
  } else {
    rep.add(Check::skipped("killing_einstein", tolerance, "no single-factor Killing soliton field"));
    rep.add(Check::skipped("killing_factor", tolerance, "no single-factor Killing soliton field"));
  }

  // ξ conformal with L_ξ g = 2ρ g.
  if (cls.is_conformal()) {
    MaxTracker ric;
    double rho_min = std::numeric_limits<double>::infinity(), rho_max = -rho_min, rho_sum = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const LocalGeometry geo = local_geometry(wp.product(), pts[k]);
      const double rho = conformal_factor(geo, vector_jet(xi, pts[k])) / 2.0;
      rho_min = std::min(rho_min, rho);
      rho_max = std::max(rho_max, rho);
      rho_sum += rho;
      ric.add(max_abs(Matrix(ricci(geo) - (mu / 2.0 - rho) * geo.g())));
    }
    const double rho_mean = rho_sum / static_cast<double>(pts.size());
    rep.notes["rho_mean"] = rho_mean;
    rep.add(Check::measured("conformal_einstein_factor", ric.value(), tolerance));
    if (rho_max - rho_min <= tolerance)
      rep.add(Check::measured("conformal_fitted_factor",
                              std::fabs(fit.constant - (mu / 2.0 - rho_mean)), tolerance));
    else
      rep.add(Check::skipped("conformal_fitted_factor", tolerance, "conformal factor not constant"));
  } else {
    rep.add(Check::skipped("conformal_einstein_factor", tolerance, "soliton field is not conformal"));
    rep.add(Check::skipped("conformal_fitted_factor", tolerance, "soliton field is not conformal"));
  }
  // Converse: Einstein with factor c forces L_ξ g = (μ - 2c) g.
  if (fit.max_residual <= tolerance) {
    MaxTracker conv;
    for (const Point& p : pts) {
      const MetricJet jet = metric_jet(wp.product(), p);
      conv.add(max_abs(Matrix(lie_derivative_metric(jet, vector_jet(xi, p)) -
                              (mu - 2.0 * fit.constant) * jet.g)));
    }
    rep.add(Check::measured("conformal_converse", conv.value(), tolerance));
  } else {
    rep.add(Check::skipped("conformal_converse", tolerance, "product is not Einstein"));
  }

  // Both lifts Killing.
  const auto m = static_cast<Eigen::Index>(wp.base_dim());
  const auto n = static_cast<Eigen::Index>(wp.fiber_dim());
  if (cls_b.is_killing() && cls_f.is_killing()) {
    MaxTracker defect, xibf;
    for (const Point& p : pts) {
      const Point b = wp.base_part(p), x = wp.fiber_part(p);
      const Jet2 f = wp.warping_jet(b);
      const double xf = directional_derivative(xi_base, f, b);
      xibf.add(std::fabs(xf));
      Matrix expected = Matrix::Zero(m + n, m + n);
      expected.bottomRightCorner(n, n) = 2.0 * f.value() * xf * wp.fiber().metric_at(x);
      defect.add(max_abs(Matrix(lie_derivative_metric(wp.product(), xi, p) - expected)));
    }
    rep.add(Check::measured("killing_lifts_lie_defect", defect.value(), tolerance));
    rep.notes["max_xi_base_f"] = xibf.value();
    if (xibf.value() <= tolerance) {
      rep.add(Check::measured("killing_lifts_einstein", fit.max_residual, tolerance));
      rep.add(Check::measured("killing_lifts_factor", std::fabs(fit.constant - mu / 2.0), tolerance));
    } else {
      rep.add(Check::skipped("killing_lifts_einstein", tolerance, "xi_B(f) != 0"));
      rep.add(Check::skipped("killing_lifts_factor", tolerance, "xi_B(f) != 0"));
    }
  } else {
    for (const char* name : {"killing_lifts_lie_defect", "killing_lifts_einstein", "killing_lifts_factor"})
      rep.add(Check::skipped(name, tolerance, "lifts are not both Killing"));
  }

  // Both lifts conformal with factors 2ρ_B, 2ρ_F.
  if (cls_b.is_conformal() && cls_f.is_conformal()) {
    MaxTracker split, relation, einstein;
    for (const Point& p : pts) {
      const Point b = wp.base_part(p), x = wp.fiber_part(p);
      const LocalGeometry geo = local_geometry(wp.product(), p);
      const LocalGeometry gb = local_geometry(wp.base(), b);
      const LocalGeometry gf = local_geometry(wp.fiber(), x);
      const double rho_b = conformal_factor(gb, vector_jet(xi_base, b)) / 2.0;
      const double rho_f = conformal_factor(gf, vector_jet(xi_fiber, x)) / 2.0;
      const Jet2 f = wp.warping_jet(b);
      const double xi_log_f = directional_derivative(xi_base, f, b) / f.value();
      Matrix expected = (mu / 2.0) * geo.g();
      expected.topLeftCorner(m, m) -= rho_b * gb.g();
      expected.bottomRightCorner(n, n) -= f.value() * f.value() * (rho_f + xi_log_f) * gf.g();
      const Matrix ric = ricci(geo);
      split.add(max_abs(Matrix(ric - expected)));
      relation.add(std::fabs(rho_b - rho_f - xi_log_f));
      einstein.add(max_abs(Matrix(ric - (mu / 2.0 - rho_b) * geo.g())));
    }
    rep.add(Check::measured("conformal_lifts_ricci_split", split.value(), tolerance));
    rep.notes["conformal_lifts_relation_defect"] = relation.value();
    if (relation.value() <= tolerance)
      rep.add(Check::measured("conformal_lifts_einstein", einstein.value(), tolerance));
    else
      rep.add(Check::skipped("conformal_lifts_einstein", tolerance, "rho_B != rho_F + xi_B(ln f)"));
  } else {
    rep.add(Check::skipped("conformal_lifts_ricci_split", tolerance, "lifts are not both conformal"));
    rep.add(Check::skipped("conformal_lifts_einstein", tolerance, "lifts are not both conformal"));
  }
  return rep;
}

/// Sufficient condition for B x_f F to carry a soliton, given a base soliton
/// (B, g_B, μ, ξ_B), an Einstein fiber (factor β) and a conformal ξ_F with
/// L ξ_F = 2ρ g_F: H^f = 0 and (2ρ - μ) f² + 2 f ξ_B(f) + 2β + 2(1 - n) k² = 0.
inline SuiteReport warping_condition_suite(const WarpedProduct& wp, const VectorField& xi_base,
                                           const VectorField& xi_fiber,
                                           const SolitonParams& params, const SamplePlan& plan,
                                           double tolerance = 1e-8) {
  const auto pts = sample_points(wp.product(), plan);
  detail::require_riemannian(wp, pts);
  const double mu = params.mu();
  const int n = static_cast<int>(wp.fiber_dim());

  MaxTracker base_sol;
  for (const Point& p : pts) {
    const Point b = wp.base_part(p);
    base_sol.add(max_abs(soliton_residual(local_geometry(wp.base(), b), vector_jet(xi_base, b), mu)));
  }
  if (!(base_sol.value() <= tolerance))
    throw HypothesisFailed("(B, g_B, mu, xi_B) is not a conformal Ricci soliton", base_sol.value());
  const EinsteinFit fiber_fit = einstein_fit(wp.fiber(), plan);
  if (!(fiber_fit.max_residual <= tolerance))
    throw HypothesisFailed("fiber is not Einstein", fiber_fit.max_residual);
  const FieldClass cls_f = classify_field(wp.fiber(), xi_fiber, plan, tolerance);
  if (!cls_f.is_conformal())
    throw HypothesisFailed("xi_F is not conformal", cls_f.conformal_residual);
  const auto [smin, smax] = std::minmax_element(cls_f.sigma.begin(), cls_f.sigma.end());
  if (!(*smax - *smin <= tolerance))
    throw HypothesisFailed("conformal factor of xi_F is not constant", *smax - *smin);
  const double rho = 0.5 * (*smin + *smax) / 2.0;
  const double beta = fiber_fit.constant;

  MaxTracker hess, quad;
  for (const Point& p : pts) {
    const Point b = wp.base_part(p);
    const LocalGeometry gb = local_geometry(wp.base(), b);
    const Jet2 f = wp.warping_jet(b);
    hess.add(max_abs(hessian(gb, f)));
    const double k = std::sqrt(std::max(0.0, laplacian_gradnorm(gb, f).grad_norm_sq));
    quad.add(std::fabs(thm35_warping_residual(f.value(), directional_derivative(xi_base, f, b), rho,
                                              mu, beta, k, n)));
  }
  SuiteReport rep{"warping_condition", {}, detail::provenance(plan, params.n_conv()), {}};
  rep.add(Check::measured("base_soliton", base_sol.value(), tolerance));
  rep.add(Check::measured("hessian_f_zero", hess.value(), tolerance));
  rep.add(Check::measured("quadratic_condition", quad.value(), tolerance));
  rep.notes["beta"] = beta;
  rep.notes["rho"] = rho;
  if (hess.value() <= tolerance && quad.value() <= tolerance) {
    rep.add(Check::measured("product_soliton",
                            detail::max_product_soliton_residual(wp, wp.lift(xi_base, xi_fiber), mu, pts),
                            tolerance));
  } else {
    rep.add(Check::skipped("product_soliton", tolerance, "sufficient condition does not hold"));
  }
  return rep;
}

/// Warped product with constant f and concurrent lifts: μ = 2, the three
/// manifolds are Ricci flat, and ξ = grad(½‖ξ‖²) on each of them.
inline SuiteReport concurrent_suite(const WarpedProduct& wp, const VectorField& xi_base,
                                    const VectorField& xi_fiber, const SolitonParams& params,
                                    const SamplePlan& plan, double tolerance = 1e-9) {
  const auto pts = sample_points(wp.product(), plan);
  detail::require_riemannian(wp, pts);
  const double grad_f = detail::max_warping_gradient(wp, pts);
  if (!(grad_f <= tolerance)) throw HypothesisFailed("warping function is not constant", grad_f);
  const FieldClass cls_b = classify_field(wp.base(), xi_base, plan, tolerance);
  if (cls_b.kind != FieldKind::concurrent)
    throw HypothesisFailed("xi_B is not concurrent (classified " + std::string(to_string(cls_b.kind)) + ")",
                           cls_b.concurrent_residual);
  const FieldClass cls_f = classify_field(wp.fiber(), xi_fiber, plan, tolerance);
  if (cls_f.kind != FieldKind::concurrent)
    throw HypothesisFailed("xi_F is not concurrent (classified " + std::string(to_string(cls_f.kind)) + ")",
                           cls_f.concurrent_residual);

  const VectorField xi = wp.lift(xi_base, xi_fiber);
  const FieldClass cls = classify_field(wp.product(), xi, plan, tolerance);
  const double mu = params.mu();
  const double n = static_cast<double>(params.n_conv());

  SuiteReport rep{"concurrent", {}, detail::provenance(plan, params.n_conv()), {}};
  rep.add(Check::measured("base_field_concurrent", cls_b.concurrent_residual, tolerance));
  rep.add(Check::measured("fiber_field_concurrent", cls_f.concurrent_residual, tolerance));
  rep.add(Check::measured("product_field_concurrent", cls.concurrent_residual, tolerance));
  rep.add(Check::measured("warping_constant", grad_f, tolerance));
  rep.add(Check::measured("product_soliton",
                          detail::max_product_soliton_residual(wp, xi, mu, pts), tolerance));
  rep.add(Check::measured("mu_equals_2", std::fabs(mu - 2.0), tolerance));
  rep.add(Check::measured("lambda_relation",
                          std::fabs(params.lambda() - (params.pressure() / 2.0 + 1.0 / n + 1.0)),
                          tolerance));

  MaxTracker ric_m, ric_b, ric_f, pot_m, pot_b, pot_f;
  for (const Point& p : pts) {
    const Point b = wp.base_part(p), x = wp.fiber_part(p);
    const LocalGeometry geo = local_geometry(wp.product(), p);
    const LocalGeometry gb = local_geometry(wp.base(), b);
    const LocalGeometry gf = local_geometry(wp.fiber(), x);
    ric_m.add(max_abs(ricci(geo)));
    ric_b.add(max_abs(ricci(gb)));
    ric_f.add(max_abs(ricci(gf)));
    pot_m.add(gradient_potential_residual(geo.jet, vector_jet(xi, p)));
    pot_b.add(gradient_potential_residual(gb.jet, vector_jet(xi_base, b)));
    pot_f.add(gradient_potential_residual(gf.jet, vector_jet(xi_fiber, x)));
  }
  rep.add(Check::measured("ricci_flat_M", ric_m.value(), tolerance));
  rep.add(Check::measured("ricci_flat_B", ric_b.value(), tolerance));
  rep.add(Check::measured("ricci_flat_F", ric_f.value(), tolerance));
  rep.add(Check::measured("gradient_potential_M", pot_m.value(), tolerance));
  rep.add(Check::measured("gradient_potential_B", pot_b.value(), tolerance));
  rep.add(Check::measured("gradient_potential_F", pot_f.value(), tolerance));

  const SolitonKind kind = classify_lambda(params.lambda());
  rep.notes["mu"] = mu;
  rep.notes["lambda"] = params.lambda();
  rep.notes["lambda_sign"] = kind == SolitonKind::shrinking ? 1.0 : kind == SolitonKind::expanding ? -1.0 : 0.0;
  return rep;
}

/// GRW spacetime -dt² ⊕ f² g_F with φ = ∫ f dt. The soliton field is
/// ξ = f ∂_t, which in Lorentzian signature is grad ψ for ψ = -φ.
inline SuiteReport grw_suite(const WarpedProduct& grw, const ScalarField& phi,
                             const SolitonParams& params, const SamplePlan& plan,
                             double tolerance = 1e-8) {
  if (!grw.is_grw()) throw ValidationError(grw.product().name(), "not a GRW spacetime");
  const auto pts = sample_points(grw.product(), plan);
  const double n = static_cast<double>(params.n_conv());
  const double lambda = params.lambda(), pressure = params.pressure(), mu = params.mu();

  // (a) φ' = f.
  MaxTracker potential;
  for (const Point& p : pts) {
    const Point b = grw.base_part(p);
    potential.add(std::fabs(eval_jet2(phi.expr, b.span()).grad(0) - evaluate(grw.warping().expr, b.span())));
  }
  if (!(potential.value() <= tolerance))
    throw HypothesisFailed("phi' != f", potential.value());

  const std::size_t d = grw.product().dim();
  VectorField xi = VectorField::zero(d);
  xi.components[0] = grw.warping().expr;
  const Expr psi = -phi.expr;  // base coordinate t keeps index 0 in the product

  MaxTracker is_grad, hess, lie, ric_form, equiv, mixed, fddot, relation;
  MaxTracker ric_norm;
  for (const Point& p : pts) {
    const LocalGeometry geo = local_geometry(grw.product(), p);
    const Jet2 f = grw.warping_jet(grw.base_part(p));
    const double fdot = f.grad(0);
    const Jet2 psi_j = eval_jet2(psi, p.span());
    const VectorJet1 xj = vector_jet(xi, p);
    const Matrix ric = ricci(geo);
    is_grad.add(max_abs(Vector(gradient_jet(geo.jet, psi_j).value - xj.value)));
    hess.add(max_abs(Matrix(hessian(geo, psi_j) - fdot * geo.g())));
    lie.add(max_abs(Matrix(lie_derivative_metric(geo.jet, xj) - 2.0 * fdot * geo.g())));
    ric_form.add(max_abs(Matrix(ric - (lambda - fdot - pressure / 2.0 - 1.0 / n) * geo.g())));
    equiv.add(gradient_equivalence_residual(geo, psi_j, mu));
    const auto m = static_cast<Eigen::Index>(grw.base_dim());
    mixed.add(max_abs(Matrix(ric.block(0, m, m, ric.cols() - m))));
    fddot.add(std::fabs(f.hess(0, 0)));
    relation.add(std::fabs(lambda - (fdot + pressure / 2.0 + 1.0 / n)));
    ric_norm.add(max_abs(ric));
  }

  SuiteReport rep{"grw", {}, detail::provenance(plan, params.n_conv()), {}};
  rep.add(Check::measured("potential_derivative", potential.value(), tolerance));
  rep.add(Check::measured("soliton_field_is_gradient", is_grad.value(), tolerance));
  rep.add(Check::measured("hessian_eq_fdot_g", hess.value(), tolerance));
  rep.add(Check::measured("lie_eq_2fdot_g", lie.value(), tolerance));
  rep.add(Check::measured("ricci_soliton_form", ric_form.value(), tolerance));
  rep.add(Check::measured("gradient_equivalence", equiv.value(), kEquivalenceTolerance));
  rep.add(Check::measured("ricci_mixed_block", mixed.value(), tolerance));
  rep.notes["max_ricci"] = ric_norm.value();
  rep.notes["product_dim"] = static_cast<double>(d);
  rep.notes["lambda_relation_defect"] = relation.value();
  if (relation.value() <= tolerance)
    rep.add(Check::measured("ricci_flat_branch", ric_norm.value(), tolerance));
  else
    rep.add(Check::skipped("ricci_flat_branch", tolerance, "lambda != fdot + p/2 + 1/n"));
  if (fddot.value() <= tolerance) {
    const EinsteinFit fit = einstein_fit(grw.product(), plan);
    rep.notes["einstein_constant"] = fit.constant;
    rep.add(Check::measured("einstein_branch", fit.max_residual, tolerance));
  } else {
    rep.add(Check::skipped("einstein_branch", tolerance, "warping function is not affine"));
  }
  return rep;
}

}  // namespace warpsol
