#pragma once

// Levi-Civita connection and curvature of a coordinate chart, computed from
// second-order jets of the metric, plus an independent finite-difference
// oracle that only ever samples metric values.
//
// Index conventions:
//   Gamma(k, i, j)   = Γ^k_ij
//   dGamma(m, k, i, j) = ∂_m Γ^k_ij
//   Riemann(l, i, j, k) = R^l_ijk = ∂_i Γ^l_jk - ∂_j Γ^l_ik + Γ^l_im Γ^m_jk - Γ^l_jm Γ^m_ik
//   Ric_jk = R^i_ijk,  r = g^jk Ric_jk

#include "warpsol/error.hpp"
#include "warpsol/expr.hpp"
#include "warpsol/manifold.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace warpsol {

/// Dense d x d x d array.
class Tensor3 {
 public:
  Tensor3() : Tensor3(0) {}
  explicit Tensor3(std::size_t d) : d_(d), data_(d * d * d, 0.0) {}

  std::size_t dim() const noexcept { return d_; }
  double& operator()(std::size_t a, std::size_t b, std::size_t c) {
    return data_[(a * d_ + b) * d_ + c];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data_[(a * d_ + b) * d_ + c];
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
  }
  friend double max_abs_diff(const Tensor3& a, const Tensor3& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      m = std::max(m, std::fabs(a.data_[i] - b.data_[i]));
    return m;
  }

 private:
  std::size_t d_;
  std::vector<double> data_;
};

/// Dense d x d x d x d array.
class Tensor4 {
 public:
  Tensor4() : Tensor4(0) {}
  explicit Tensor4(std::size_t d) : d_(d), data_(d * d * d * d, 0.0) {}

  std::size_t dim() const noexcept { return d_; }
  double& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
    return data_[((a * d_ + b) * d_ + c) * d_ + e];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t e) const {
    return data_[((a * d_ + b) * d_ + c) * d_ + e];
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
  }
  friend double max_abs_diff(const Tensor4& a, const Tensor4& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      m = std::max(m, std::fabs(a.data_[i] - b.data_[i]));
    return m;
  }

 private:
  std::size_t d_;
  std::vector<double> data_;
};

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

inline constexpr double kSingularDet = 1e-12;

/// Inverse by partial-pivot elimination; valid for indefinite metrics.
inline Matrix invert_metric(const Matrix& g) {
  Eigen::PartialPivLU<Matrix> lu(g);
  const double det = lu.determinant();
  if (!(std::fabs(det) > kSingularDet)) throw SingularMetric(det);
  return lu.inverse();
}

inline Signature signature_of(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  Signature s;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 0.0) ++s.plus;
    else if (es.eigenvalues()(i) < 0.0) ++s.minus;
  }
  return s;
}

struct MetricJet {
  Matrix g;
  Matrix g_inv;
  Tensor3 dg;   // dg(k, i, j) = ∂_k g_ij
  Tensor4 ddg;  // ddg(k, l, i, j) = ∂_k ∂_l g_ij

  std::size_t dim() const noexcept { return dg.dim(); }
};

inline MetricJet metric_jet(const ChartManifold& m, const Point& pt) {
  m.check_point(pt);
  const std::size_t d = m.dim();
  const auto di = static_cast<Eigen::Index>(d);
  MetricJet jet{Matrix(di, di), Matrix(di, di), Tensor3(d), Tensor4(d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const Jet2 e = eval_jet2(m.metric(i, j), pt.span());
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      jet.g(ii, jj) = jet.g(jj, ii) = e.value();
      for (std::size_t k = 0; k < d; ++k) {
        jet.dg(k, i, j) = jet.dg(k, j, i) = e.grad(k);
        for (std::size_t l = 0; l < d; ++l) jet.ddg(k, l, i, j) = jet.ddg(k, l, j, i) = e.hess(k, l);
      }
    }
  jet.g_inv = invert_metric(jet.g);
  return jet;
}

/// Nondegeneracy and, when hinted, signature at every point of `plan`.
inline void validate_chart(const ChartManifold& m, const SamplePlan& plan) {
  for (const Point& p : sample_points(m, plan)) {
    const Matrix g = m.metric_at(p);
    const double det = g.determinant();
    if (!(std::fabs(det) > kSingularDet)) throw SingularMetric(det);
    if (m.signature_hint() && signature_of(g) != *m.signature_hint())
      throw SignatureError("metric of '" + m.name() + "' does not have the hinted signature");
  }
}

/// ∂_m g^{kl} = -(g^{-1} (∂_m g) g^{-1})^{kl}
inline Tensor3 inverse_metric_derivative(const MetricJet& jet) {
  const std::size_t d = jet.dim();
  Tensor3 out(d);
  const auto di = static_cast<Eigen::Index>(d);
  for (std::size_t m = 0; m < d; ++m) {
    Matrix dgm(di, di);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        dgm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = jet.dg(m, i, j);
    const Matrix dinv = -jet.g_inv * dgm * jet.g_inv;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l)
        out(m, k, l) = dinv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
  }
  return out;
}

struct Christoffel {
  Tensor3 gamma;  // gamma(k, i, j) = Γ^k_ij

  std::size_t dim() const noexcept { return gamma.dim(); }
  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return gamma(k, i, j); }
};

namespace detail {

// Γ^k_ij from g^{-1} and first derivatives; symmetric in (i, j) by construction.
inline Tensor3 christoffel_from(const Matrix& g_inv, const Tensor3& dg) {
  const std::size_t d = dg.dim();
  Tensor3 gamma(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < d; ++l)
          s += g_inv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) *
               (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
        gamma(k, i, j) = gamma(k, j, i) = 0.5 * s;
      }
    }
  return gamma;
}

inline Tensor4 riemann_from(const Tensor3& gamma, const Tensor4& dgamma) {
  const std::size_t d = gamma.dim();
  Tensor4 r(d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          double s = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (std::size_t m = 0; m < d; ++m)
            s += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          r(l, i, j, k) = s;
        }
  return r;
}

inline Matrix ricci_from(const Tensor4& riemann) {
  const std::size_t d = riemann.dim();
  const auto di = static_cast<Eigen::Index>(d);
  Matrix ric = Matrix::Zero(di, di);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += riemann(i, i, j, k);
      ric(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = s;
    }
  return ric;
}

}  // namespace detail

/// Everything second-order at one point: metric jet, Γ and ∂Γ.
struct LocalGeometry {
  MetricJet jet;
  Tensor3 gamma;
  Tensor4 dgamma;  // dgamma(m, k, i, j) = ∂_m Γ^k_ij

  std::size_t dim() const noexcept { return jet.dim(); }
  const Matrix& g() const noexcept { return jet.g; }
  const Matrix& g_inv() const noexcept { return jet.g_inv; }
};

inline LocalGeometry local_geometry(const ChartManifold& m, const Point& pt) {
  LocalGeometry geo{metric_jet(m, pt), {}, {}};
  const std::size_t d = geo.dim();
  geo.gamma = detail::christoffel_from(geo.jet.g_inv, geo.jet.dg);
  const Tensor3 dinv = inverse_metric_derivative(geo.jet);

  // Γ_lij = ½(∂_i g_jl + ∂_j g_il - ∂_l g_ij), first kind.
  Tensor3 first(d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        first(l, i, j) = 0.5 * (geo.jet.dg(i, j, l) + geo.jet.dg(j, i, l) - geo.jet.dg(l, i, j));

  geo.dgamma = Tensor4(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
          double s = 0.0;
          for (std::size_t l = 0; l < d; ++l) {
            const double dfirst = 0.5 * (geo.jet.ddg(m, i, j, l) + geo.jet.ddg(m, j, i, l) -
                                         geo.jet.ddg(m, l, i, j));
            s += dinv(m, k, l) * first(l, i, j) +
                 geo.jet.g_inv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) * dfirst;
          }
          geo.dgamma(m, k, i, j) = geo.dgamma(m, k, j, i) = s;
        }
  return geo;
}

inline Christoffel christoffel(const ChartManifold& m, const Point& pt) {
  const MetricJet jet = metric_jet(m, pt);
  return {detail::christoffel_from(jet.g_inv, jet.dg)};
}

inline Tensor4 riemann(const LocalGeometry& geo) { return detail::riemann_from(geo.gamma, geo.dgamma); }
inline Tensor4 riemann(const ChartManifold& m, const Point& pt) { return riemann(local_geometry(m, pt)); }

inline Matrix ricci(const LocalGeometry& geo) { return detail::ricci_from(riemann(geo)); }
inline Matrix ricci(const ChartManifold& m, const Point& pt) { return ricci(local_geometry(m, pt)); }

inline double scalar_curvature(const LocalGeometry& geo) {
  return (geo.g_inv().cwiseProduct(ricci(geo))).sum();
}
inline double scalar_curvature(const ChartManifold& m, const Point& pt) {
  return scalar_curvature(local_geometry(m, pt));
}

/// K(e_i, e_j) = R_{i i j j}-type ratio in this convention: g_ia R^a_ijj / (g_ii g_jj - g_ij²).
inline double sectional_curvature(const LocalGeometry& geo, std::size_t i, std::size_t j) {
  const Tensor4 r = riemann(geo);
  const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
  double num = 0.0;
  for (std::size_t a = 0; a < geo.dim(); ++a)
    num += geo.g()(ii, static_cast<Eigen::Index>(a)) * r(a, i, j, j);
  const double den = geo.g()(ii, ii) * geo.g()(jj, jj) - geo.g()(ii, jj) * geo.g()(ii, jj);
  return num / den;
}

// ---------------------------------------------------------------------------
// Scalar and vector field calculus

/// H_ij = ∂_i ∂_j φ - Γ^k_ij ∂_k φ
inline Matrix hessian(const LocalGeometry& geo, const Jet2& phi) {
  const std::size_t d = geo.dim();
  const auto di = static_cast<Eigen::Index>(d);
  Matrix h(di, di);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      double s = phi.hess(i, j);
      for (std::size_t k = 0; k < d; ++k) s -= geo.gamma(k, i, j) * phi.grad(k);
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = s;
    }
  return h;
}

inline Matrix hessian(const ChartManifold& m, const ScalarField& phi, const Point& pt) {
  const LocalGeometry geo = local_geometry(m, pt);
  return hessian(geo, eval_jet2(phi.expr, pt.span()));
}

struct LaplacianGradNorm {
  double laplacian;
  double grad_norm_sq;
};

inline LaplacianGradNorm laplacian_gradnorm(const LocalGeometry& geo, const Jet2& phi) {
  const Vector dphi = phi.gradient_vector();
  return {geo.g_inv().cwiseProduct(hessian(geo, phi)).sum(), dphi.dot(geo.g_inv() * dphi)};
}

inline LaplacianGradNorm laplacian_gradnorm(const ChartManifold& m, const ScalarField& phi,
                                            const Point& pt) {
  return laplacian_gradnorm(local_geometry(m, pt), eval_jet2(phi.expr, pt.span()));
}

/// A vector field's components X^k and first derivatives ∂_i X^k at a point.
struct VectorJet1 {
  Vector value;
  Matrix d;  // d(k, i) = ∂_i X^k

  static VectorJet1 zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return {Vector::Zero(n), Matrix::Zero(n, n)};
  }

  friend VectorJet1 operator+(const VectorJet1& a, const VectorJet1& b) {
    return {a.value + b.value, a.d + b.d};
  }
  friend VectorJet1 operator-(const VectorJet1& a, const VectorJet1& b) {
    return {a.value - b.value, a.d - b.d};
  }
  friend VectorJet1 operator*(double s, const VectorJet1& a) { return {s * a.value, s * a.d}; }
};

inline VectorJet1 vector_jet(const VectorField& x, const Point& pt) {
  if (x.dim() != pt.dim())
    throw std::invalid_argument("vector field dimension does not match the point");
  const auto n = static_cast<Eigen::Index>(x.dim());
  VectorJet1 v{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Jet2 c = eval_jet2(x.components[static_cast<std::size_t>(k)], pt.span());
    v.value(k) = c.value();
    for (Eigen::Index i = 0; i < n; ++i) v.d(k, i) = c.grad(static_cast<std::size_t>(i));
  }
  return v;
}

/// grad φ with components g^{kl} ∂_l φ, and its first derivatives.
inline VectorJet1 gradient_jet(const MetricJet& jet, const Jet2& phi) {
  const std::size_t d = jet.dim();
  const Tensor3 dinv = inverse_metric_derivative(jet);
  const Vector dphi = phi.gradient_vector();
  VectorJet1 v{jet.g_inv * dphi, phi.hessian()};
  v.d = jet.g_inv * phi.hessian();  // g^{kl} ∂_i ∂_l φ (Hessian symmetric)
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t l = 0; l < d; ++l) s += dinv(i, k, l) * dphi(static_cast<Eigen::Index>(l));
      v.d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) += s;
    }
  return v;
}

inline VectorJet1 gradient_jet(const ChartManifold& m, const ScalarField& phi, const Point& pt) {
  return gradient_jet(metric_jet(m, pt), eval_jet2(phi.expr, pt.span()));
}

/// (L_X g)_ij = X^k ∂_k g_ij + g_kj ∂_i X^k + g_ik ∂_j X^k
inline Matrix lie_derivative_metric(const MetricJet& jet, const VectorJet1& x) {
  const std::size_t d = jet.dim();
  const auto di = static_cast<Eigen::Index>(d);
  Matrix out(di, di);
  const Matrix gdx = jet.g * x.d;  // (g ∂X)_{j i} = g_jk ∂_i X^k
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      double s = gdx(jj, ii) + gdx(ii, jj);
      for (std::size_t k = 0; k < d; ++k) s += x.value(static_cast<Eigen::Index>(k)) * jet.dg(k, i, j);
      out(ii, jj) = out(jj, ii) = s;
    }
  return out;
}

inline Matrix lie_derivative_metric(const ChartManifold& m, const VectorField& x, const Point& pt) {
  return lie_derivative_metric(metric_jet(m, pt), vector_jet(x, pt));
}

/// Mixed tensor (∇X)^k_i = ∂_i X^k + Γ^k_ij X^j.
inline Matrix covariant_derivative(const LocalGeometry& geo, const VectorJet1& x) {
  const std::size_t d = geo.dim();
  Matrix out = x.d;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += geo.gamma(k, i, j) * x.value(static_cast<Eigen::Index>(j));
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) += s;
    }
  return out;
}

/// (∇_dir ξ)^k at a point.
inline Vector covariant_derivative_vector(const ChartManifold& m, const VectorField& dir,
                                          const VectorField& xi, const Point& pt) {
  const LocalGeometry geo = local_geometry(m, pt);
  const VectorJet1 dv = vector_jet(dir, pt);
  return covariant_derivative(geo, vector_jet(xi, pt)) * dv.value;
}

// ---------------------------------------------------------------------------
// Identity residuals

/// max |∂_k g_ij - Γ^l_ki g_lj - Γ^l_kj g_il|
inline double metric_compatibility_residual(const LocalGeometry& geo) {
  const std::size_t d = geo.dim();
  double worst = 0.0;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double s = geo.jet.dg(k, i, j);
        for (std::size_t l = 0; l < d; ++l)
          s -= geo.gamma(l, k, i) * geo.g()(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) +
               geo.gamma(l, k, j) * geo.g()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l));
        worst = std::max(worst, std::fabs(s));
      }
  return worst;
}

/// max over (l,i,j,k) of |R^l_ijk + R^l_jki + R^l_kij|.
inline double first_bianchi_residual(const Tensor4& r) {
  const std::size_t d = r.dim();
  double worst = 0.0;
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          worst = std::max(worst, std::fabs(r(l, i, j, k) + r(l, j, k, i) + r(l, k, i, j)));
  return worst;
}

/// max |R^l_ijk + R^l_jik|
inline double riemann_antisymmetry_residual(const Tensor4& r) {
  const std::size_t d = r.dim();
  double worst = 0.0;
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          worst = std::max(worst, std::fabs(r(l, i, j, k) + r(l, j, i, k)));
  return worst;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle. Uses plain metric values only, never jets.

namespace fd {

inline Point shifted(const Point& p, std::size_t axis, double delta) {
  Point q = p;
  q.coords[axis] += delta;
  return q;
}

/// ∂_k g_ij by central differences.
inline Tensor3 metric_derivative(const ChartManifold& m, const Point& pt, double h) {
  const std::size_t d = m.dim();
  Tensor3 dg(d);
  for (std::size_t k = 0; k < d; ++k) {
    const Matrix gp = m.metric_at(shifted(pt, k, h));
    const Matrix gm = m.metric_at(shifted(pt, k, -h));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        dg(k, i, j) = (gp(ii, jj) - gm(ii, jj)) / (2.0 * h);
      }
  }
  return dg;
}

inline Tensor3 christoffel(const ChartManifold& m, const Point& pt, double h) {
  return detail::christoffel_from(invert_metric(m.metric_at(pt)), metric_derivative(m, pt, h));
}

/// Riemann from central differences of the FD Christoffel symbols.
inline Tensor4 riemann(const ChartManifold& m, const Point& pt, double h) {
  const std::size_t d = m.dim();
  const Tensor3 gamma = christoffel(m, pt, h);
  Tensor4 dgamma(d);
  for (std::size_t a = 0; a < d; ++a) {
    const Tensor3 gp = christoffel(m, shifted(pt, a, h), h);
    const Tensor3 gm = christoffel(m, shifted(pt, a, -h), h);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) dgamma(a, k, i, j) = (gp(k, i, j) - gm(k, i, j)) / (2.0 * h);
  }
  return detail::riemann_from(gamma, dgamma);
}

inline Matrix ricci(const ChartManifold& m, const Point& pt, double h) {
  return detail::ricci_from(riemann(m, pt, h));
}

}  // namespace fd

struct FdDeviation {
  double christoffel = 0.0;
  double riemann = 0.0;
  double ricci = 0.0;
};

/// Max absolute deviation between the jet pipeline and the FD oracle at pt.
inline FdDeviation fd_deviation(const ChartManifold& m, const Point& pt, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  m.check_point(pt);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    const Interval& iv = m.domain()[i];
    if (!(pt[i] - 2.0 * h > iv.lower && pt[i] + 2.0 * h < iv.upper))
      throw DomainError("point within 2h of the domain boundary of '" + m.coord_names()[i] + "'");
  }
  const LocalGeometry geo = local_geometry(m, pt);
  const Tensor4 r = riemann(geo);
  FdDeviation dev;
  dev.christoffel = max_abs_diff(geo.gamma, fd::christoffel(m, pt, h));
  const Tensor4 r_fd = fd::riemann(m, pt, h);
  dev.riemann = max_abs_diff(r, r_fd);
  dev.ricci = max_abs(Matrix(detail::ricci_from(r) - detail::ricci_from(r_fd)));
  return dev;
}

}  // namespace warpsol
