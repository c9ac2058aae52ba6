#pragma once

// Warped products B x_f F and generalized Robertson-Walker spacetimes,
// assembled as a single product chart, together with checks of the standard
// warped-product curvature and Lie-derivative splittings.

#include "warpsol/curvature.hpp"
#include "warpsol/error.hpp"
#include "warpsol/manifold.hpp"
#include "warpsol/report.hpp"

#include <set>
#include <string>

namespace warpsol {

enum class Origin { base, fiber };

/// A factor field extended to the product, constant along the other factor.
struct LiftedField {
  Origin origin;
  VectorField field;
};

/// Points used to validate positivity of the warping function.
inline constexpr SamplePlan kWarpingValidationPlan{128, 0x5eedULL, 0.01};

class WarpedProduct {
 public:
  WarpedProduct(ChartManifold base, ChartManifold fiber, ScalarField f, ChartManifold product,
                bool grw)
      : base_(std::move(base)),
        fiber_(std::move(fiber)),
        f_(std::move(f)),
        product_(std::move(product)),
        grw_(grw) {}

  const ChartManifold& base() const noexcept { return base_; }
  const ChartManifold& fiber() const noexcept { return fiber_; }
  const ChartManifold& product() const noexcept { return product_; }
  /// Warping function, over the base coordinates.
  const ScalarField& warping() const noexcept { return f_; }
  bool is_grw() const noexcept { return grw_; }

  std::size_t base_dim() const noexcept { return base_.dim(); }
  std::size_t fiber_dim() const noexcept { return fiber_.dim(); }

  Point base_part(const Point& p) const {
    product_.check_point(p);
    return {{p.coords.begin(), p.coords.begin() + static_cast<std::ptrdiff_t>(base_dim())}};
  }
  Point fiber_part(const Point& p) const {
    product_.check_point(p);
    return {{p.coords.begin() + static_cast<std::ptrdiff_t>(base_dim()), p.coords.end()}};
  }
  Point join(const Point& b, const Point& x) const {
    base_.check_point(b);
    fiber_.check_point(x);
    Point p = b;
    p.coords.insert(p.coords.end(), x.coords.begin(), x.coords.end());
    return p;
  }

  LiftedField lift_base(const VectorField& x) const {
    require_dim(x, base_);
    VectorField v = x;  // base coordinates keep their indices
    for (std::size_t i = 0; i < fiber_dim(); ++i) v.components.push_back(Expr::constant(0.0));
    return {Origin::base, std::move(v)};
  }

  LiftedField lift_fiber(const VectorField& u) const {
    require_dim(u, fiber_);
    VectorField v = VectorField::zero(base_dim());
    for (const auto& c : u.components) v.components.push_back(c.shift(base_dim()));
    return {Origin::fiber, std::move(v)};
  }

  /// lift(ξ_B) + lift(ξ_F)
  VectorField lift(const VectorField& xi_base, const VectorField& xi_fiber) const {
    const VectorField b = lift_base(xi_base).field;
    const VectorField f = lift_fiber(xi_fiber).field;
    VectorField v;
    for (std::size_t i = 0; i < product_.dim(); ++i)
      v.components.push_back(i < base_dim() ? b.components[i] : f.components[i]);
    return v;
  }

  ScalarField lift_base_scalar(const ScalarField& s) const { return s; }
  ScalarField lift_fiber_scalar(const ScalarField& s) const { return {s.expr.shift(base_dim())}; }

  /// Jet of f over the base coordinates.
  Jet2 warping_jet(const Point& base_pt) const { return eval_jet2(f_.expr, base_pt.span()); }

 private:
  static void require_dim(const VectorField& v, const ChartManifold& m) {
    if (v.dim() != m.dim())
      throw ValidationError(m.name(), "field has " + std::to_string(v.dim()) +
                                          " components, chart has dimension " +
                                          std::to_string(m.dim()));
  }

  ChartManifold base_;
  ChartManifold fiber_;
  ScalarField f_;
  ChartManifold product_;
  bool grw_;
};

namespace detail {

inline void check_warping_positive(const ChartManifold& base, const ScalarField& f) {
  for (const Point& p : sample_points(base, kWarpingValidationPlan)) {
    const double v = evaluate(f.expr, p.span());
    if (!(v > 0.0)) {
      std::string where = "(";
      for (std::size_t i = 0; i < p.dim(); ++i)
        where += (i ? ", " : "") + base.coord_names()[i] + "=" + std::to_string(p[i]);
      throw NonPositiveWarping(where + ")", v);
    }
  }
}

inline WarpedProduct assemble(std::string name, const ChartManifold& base,
                              const ChartManifold& fiber, const ScalarField& f, bool grw,
                              std::optional<Signature> hint) {
  const std::set<std::string> names(base.coord_names().begin(), base.coord_names().end());
  for (const auto& n : fiber.coord_names())
    if (names.count(n)) throw NameClash(n);
  check_warping_positive(base, f);

  const std::size_t m = base.dim(), n = fiber.dim(), d = m + n;
  std::vector<std::string> coords = base.coord_names();
  coords.insert(coords.end(), fiber.coord_names().begin(), fiber.coord_names().end());
  std::vector<Interval> domain = base.domain();
  domain.insert(domain.end(), fiber.domain().begin(), fiber.domain().end());

  const Expr f2 = Expr::pow(f.expr, 2.0);
  std::vector<std::vector<Expr>> g(d, std::vector<Expr>(d, Expr::constant(0.0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[i][j] = base.metric(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Expr& e = fiber.metric(i, j);
      if (auto c = e.constant_value(); c && *c == 0.0) continue;
      g[m + i][m + j] = f2 * e.shift(m);
    }
  if (name.empty()) name = base.name() + "x_f" + fiber.name();
  return WarpedProduct(base, fiber, f,
                       ChartManifold(std::move(name), std::move(coords), std::move(domain), g, hint),
                       grw);
}

}  // namespace detail

/// B x_f F with metric g_B ⊕ f² g_F; coordinates are base then fiber.
inline WarpedProduct build_warped(const ChartManifold& base, const ChartManifold& fiber,
                                  const ScalarField& f, std::string name = {}) {
  std::optional<Signature> hint;
  if (base.signature_hint() && fiber.signature_hint())
    hint = Signature{base.signature_hint()->plus + fiber.signature_hint()->plus,
                     base.signature_hint()->minus + fiber.signature_hint()->minus};
  return detail::assemble(std::move(name), base, fiber, f, false, hint);
}

/// The time line (I, -dt²) used as GRW base.
inline ChartManifold time_line(std::string time_coord, Interval interval, std::string name = "I") {
  return ChartManifold(std::move(name), {std::move(time_coord)}, {interval},
                       {{Expr::constant(-1.0)}}, Signature{0, 1});
}

/// GRW spacetime I x_f F with metric -dt² ⊕ f(t)² g_F. `f` is over the single
/// coordinate of `base`, which must come from time_line().
inline WarpedProduct build_grw(const ChartManifold& base, const ScalarField& f,
                               const ChartManifold& fiber, std::string name = {}) {
  if (base.dim() != 1) throw ValidationError(base.name(), "GRW base must be one-dimensional");
  const Signature fiber_sig = fiber.signature_hint().value_or(
      signature_of(fiber.metric_at(sample_points(fiber, kWarpingValidationPlan).front())));
  if (fiber_sig.minus != 0 || static_cast<std::size_t>(fiber_sig.plus) != fiber.dim())
    throw SignatureError("GRW fiber must be Riemannian");
  return detail::assemble(std::move(name), base, fiber, f, true,
                          Signature{static_cast<int>(fiber.dim()), 1});
}

inline WarpedProduct build_grw(std::string_view f_text, const ChartManifold& fiber,
                               std::string time_coord, Interval interval, std::string name = {}) {
  const ChartManifold base = time_line(std::move(time_coord), interval);
  return build_grw(base, ScalarField::parse(base, f_text), fiber, std::move(name));
}

// ---------------------------------------------------------------------------

/// f Δf + (n-1) ‖∇f‖² on the base, n = fiber dimension.
inline double tilde_f(const WarpedProduct& wp, const Point& base_pt) {
  const LocalGeometry geo = local_geometry(wp.base(), base_pt);
  const Jet2 f = wp.warping_jet(base_pt);
  const auto [lap, grad2] = laplacian_gradnorm(geo, f);
  return f.value() * lap + (static_cast<double>(wp.fiber_dim()) - 1.0) * grad2;
}

/// True when the metric is positive definite at every point.
inline bool is_riemannian(const ChartManifold& m, std::span<const Point> pts) {
  if (const auto& hint = m.signature_hint(); hint && hint->minus != 0) return false;
  for (const Point& p : pts) {
    const Signature s = signature_of(m.metric_at(p));
    if (s.minus != 0 || static_cast<std::size_t>(s.plus) != m.dim()) return false;
  }
  return true;
}

/// Residuals of the four warped-product identities at one product point.
struct Lemma11Residuals {
  double connection = 0.0;   // D_X U = (X(f)/f) U
  double ricci_mixed = 0.0;  // Ric(X, U) = 0
  double ricci_base = 0.0;   // Ric(X, Y) = Ric^B - (n/f) H^f
  double ricci_fiber = 0.0;  // Ric(U, V) = Ric^F - (Δf/f + (n-1)‖∇f‖²/f²) g
};

inline Lemma11Residuals lemma11_residuals(const WarpedProduct& wp, const Point& p) {
  const std::size_t m = wp.base_dim(), n = wp.fiber_dim();
  const Point b = wp.base_part(p), x = wp.fiber_part(p);
  const LocalGeometry geo = local_geometry(wp.product(), p);
  const LocalGeometry gb = local_geometry(wp.base(), b);
  const LocalGeometry gf = local_geometry(wp.fiber(), x);
  const Matrix ric = ricci(geo), ric_b = ricci(gb), ric_f = ricci(gf);
  const Jet2 f = wp.warping_jet(b);
  const Matrix hf = hessian(gb, f);
  const auto [lap, grad2] = laplacian_gradnorm(gb, f);
  const double fv = f.value(), nd = static_cast<double>(n);

  Lemma11Residuals r;
  // Coordinate basis fields have constant components, so (∇_{e_a} e_u)^k = Γ^k_au.
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t u = m; u < m + n; ++u)
      for (std::size_t k = 0; k < m + n; ++k) {
        const double expected = k == u ? f.grad(a) / fv : 0.0;
        r.connection = std::max(r.connection, std::fabs(geo.gamma(k, a, u) - expected));
        r.connection = std::max(r.connection, std::fabs(geo.gamma(k, u, a) - expected));
      }
  const auto I = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t u = m; u < m + n; ++u)
      r.ricci_mixed = std::max(r.ricci_mixed, std::fabs(ric(I(a), I(u))));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < m; ++c)
      r.ricci_base = std::max(
          r.ricci_base, std::fabs(ric(I(a), I(c)) - (ric_b(I(a), I(c)) - nd / fv * hf(I(a), I(c)))));
  const double sharp = lap / fv + (nd - 1.0) * grad2 / (fv * fv);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      r.ricci_fiber = std::max(
          r.ricci_fiber, std::fabs(ric(I(m + u), I(m + v)) -
                                   (ric_f(I(u), I(v)) - sharp * geo.g()(I(m + u), I(m + v)))));
  return r;
}

/// Verifies the four warped-product identities at sampled product points.
/// Only defined for Riemannian factors; Lorentzian products are checked on
/// the product chart directly.
inline SuiteReport verify_lemma11(const WarpedProduct& wp, const SamplePlan& plan,
                                  double tolerance = 1e-8) {
  const auto pts = sample_points(wp.product(), plan);
  std::vector<Point> bs, xs;
  for (const auto& p : pts) {
    bs.push_back(wp.base_part(p));
    xs.push_back(wp.fiber_part(p));
  }
  if (!is_riemannian(wp.base(), bs) || !is_riemannian(wp.fiber(), xs))
    throw SignatureError("warped-product identities require Riemannian base and fiber");

  MaxTracker conn, mixed, base, fiber;
  for (const auto& p : pts) {
    const Lemma11Residuals r = lemma11_residuals(wp, p);
    conn.add(r.connection);
    mixed.add(r.ricci_mixed);
    base.add(r.ricci_base);
    fiber.add(r.ricci_fiber);
  }
  SuiteReport rep{"lemma11", {}, {plan.seed, plan.count, static_cast<int>(wp.product().dim())}, {}};
  rep.add(Check::measured("connection_mixed", conn.value(), tolerance));
  rep.add(Check::measured("ricci_mixed", mixed.value(), tolerance));
  rep.add(Check::measured("ricci_base_block", base.value(), tolerance));
  rep.add(Check::measured("ricci_fiber_block", fiber.value(), tolerance));
  return rep;
}

/// max |Ric(e_a, e_u)| over base/fiber index pairs; valid for any signature.
inline double mixed_ricci_residual(const WarpedProduct& wp, const Point& p) {
  const Matrix ric = ricci(wp.product(), p);
  const auto m = static_cast<Eigen::Index>(wp.base_dim());
  return max_abs(Matrix(ric.block(0, m, m, ric.cols() - m)));
}

/// ξ_B(f) at a base point.
inline double directional_derivative(const VectorField& x, const Jet2& f, const Point& pt) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += evaluate(x.components[i], pt.span()) * f.grad(i);
  return s;
}

/// L_ξ g - [L^B_{ξ_B} g_B ⊕ (f² L^F_{ξ_F} g_F + 2 f ξ_B(f) g_F)], ξ = lift(ξ_B) + lift(ξ_F).
inline Matrix lie_split_residual(const WarpedProduct& wp, const VectorField& xi_base,
                                 const VectorField& xi_fiber, const Point& p) {
  const Point b = wp.base_part(p), x = wp.fiber_part(p);
  const Matrix lhs = lie_derivative_metric(wp.product(), wp.lift(xi_base, xi_fiber), p);
  const auto m = static_cast<Eigen::Index>(wp.base_dim());
  const auto n = static_cast<Eigen::Index>(wp.fiber_dim());
  const Jet2 f = wp.warping_jet(b);
  const double fv = f.value();
  Matrix rhs = Matrix::Zero(m + n, m + n);
  rhs.topLeftCorner(m, m) = lie_derivative_metric(wp.base(), xi_base, b);
  rhs.bottomRightCorner(n, n) = fv * fv * lie_derivative_metric(wp.fiber(), xi_fiber, x) +
                                2.0 * fv * directional_derivative(xi_base, f, b) *
                                    wp.fiber().metric_at(x);
  return lhs - rhs;
}

/// Jet of ln f over the base.
inline Jet2 log_warping_jet(const WarpedProduct& wp, const Point& base_pt) {
  const Jet2 f = wp.warping_jet(base_pt);
  if (!(f.value() > 0.0)) throw NonPositiveWarping("base point", f.value());
  const double v = f.value();
  return f.compose(std::log(v), 1.0 / v, -1.0 / (v * v));
}

/// ξ_B - n ∇^B ln f, as a pointwise jet on the base.
inline VectorJet1 shifted_base_field(const WarpedProduct& wp, const VectorField& xi_base,
                                     const Point& base_pt) {
  const MetricJet jet = metric_jet(wp.base(), base_pt);
  return vector_jet(xi_base, base_pt) -
         static_cast<double>(wp.fiber_dim()) * gradient_jet(jet, log_warping_jet(wp, base_pt));
}

/// L^B_{ξ_B} g_B - (2n/f) H^f - L^B_{ξ_B - n ∇^B ln f} g_B at a base point.
inline Matrix operator_identity_residual(const WarpedProduct& wp, const VectorField& xi_base,
                                         const Point& base_pt) {
  const LocalGeometry gb = local_geometry(wp.base(), base_pt);
  const Jet2 f = wp.warping_jet(base_pt);
  const double nd = static_cast<double>(wp.fiber_dim());
  const Matrix lhs = lie_derivative_metric(gb.jet, vector_jet(xi_base, base_pt)) -
                     (2.0 * nd / f.value()) * hessian(gb, f);
  return lhs - lie_derivative_metric(gb.jet, shifted_base_field(wp, xi_base, base_pt));
}

/// Split-Lie formula, the operator identity as stated, and the identity's
/// exact defect -2n d(ln f) ⊗ d(ln f).
inline SuiteReport lie_split_suite(const WarpedProduct& wp, const VectorField& xi_base,
                                   const VectorField& xi_fiber, const SamplePlan& plan,
                                   double tolerance = 1e-8) {
  MaxTracker split, op, defect;
  const double nd = static_cast<double>(wp.fiber_dim());
  for (const Point& p : sample_points(wp.product(), plan)) {
    split.add(max_abs(lie_split_residual(wp, xi_base, xi_fiber, p)));
    const Point b = wp.base_part(p);
    const Matrix r = operator_identity_residual(wp, xi_base, b);
    op.add(max_abs(r));
    const Vector dlog = log_warping_jet(wp, b).gradient_vector();
    defect.add(max_abs(Matrix(r + 2.0 * nd * dlog * dlog.transpose())));
  }
  SuiteReport rep{"lie_split", {}, {plan.seed, plan.count, static_cast<int>(wp.product().dim())}, {}};
  rep.add(Check::measured("lie_split", split.value(), tolerance));
  rep.add(Check::measured("operator_identity", op.value(), tolerance));
  rep.add(Check::measured("operator_identity_exact_defect", defect.value(), tolerance));
  rep.notes["operator_identity_max_defect"] = op.value();
  return rep;
}

}  // namespace warpsol
