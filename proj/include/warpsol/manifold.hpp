#pragma once

// Coordinate charts with metric expressions, fields on them, soliton
// parameters and deterministic sampling plans.

#include "warpsol/error.hpp"
#include "warpsol/expr.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace warpsol {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Point {
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  std::span<const double> span() const noexcept { return coords; }
  double operator[](std::size_t i) const { return coords[i]; }
};

/// Open interval (lower, upper); either end may be infinite.
struct Interval {
  double lower;
  double upper;
};

/// Numbers of positive and negative metric eigenvalues.
struct Signature {
  int plus = 0;
  int minus = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

class ChartManifold {
 public:
  /// `metric` is d x d; only its upper triangle is read.
  ChartManifold(std::string name, std::vector<std::string> coord_names,
                std::vector<Interval> domain, const std::vector<std::vector<Expr>>& metric,
                std::optional<Signature> signature_hint = std::nullopt)
      : name_(std::move(name)),
        coord_names_(std::move(coord_names)),
        domain_(std::move(domain)),
        signature_hint_(signature_hint) {
    const std::size_t d = coord_names_.size();
    check_coords(name_, coord_names_);
    if (domain_.size() != d) throw ValidationError(name_, "domain has wrong length");
    for (const auto& iv : domain_)
      if (std::isnan(iv.lower) || std::isnan(iv.upper) || !(iv.lower < iv.upper))
        throw ValidationError(name_, "domain interval must satisfy a < b");
    if (metric.size() != d) throw ValidationError(name_, "metric has wrong number of rows");
    for (const auto& row : metric)
      if (row.size() != d) throw ValidationError(name_, "metric row has wrong length");
    metric_.reserve(d * (d + 1) / 2);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) metric_.push_back(metric[i][j]);
    if (signature_hint_ &&
        static_cast<std::size_t>(signature_hint_->plus + signature_hint_->minus) != d)
      throw ValidationError(name_, "signature hint does not sum to the dimension");
  }

  /// Parse every metric entry against this chart's coordinates.
  static ChartManifold parse(std::string name, std::vector<std::string> coord_names,
                             std::vector<Interval> domain,
                             const std::vector<std::vector<std::string>>& metric,
                             std::optional<Signature> signature_hint = std::nullopt) {
    check_coords(name, coord_names);
    std::vector<std::vector<Expr>> m;
    for (const auto& row : metric) {
      std::vector<Expr> r;
      for (const auto& s : row) r.push_back(warpsol::parse_expr(s, coord_names));
      m.push_back(std::move(r));
    }
    return ChartManifold(std::move(name), std::move(coord_names), std::move(domain), m,
                         signature_hint);
  }

  static void check_coords(const std::string& chart, const std::vector<std::string>& coords) {
    if (coords.empty()) throw ValidationError(chart, "chart needs at least one coordinate");
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::size_t j = i + 1; j < coords.size(); ++j)
        if (coords[i] == coords[j]) throw ValidationError(chart, "duplicate coordinate '" + coords[i] + "'");
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return coord_names_.size(); }
  const std::vector<std::string>& coord_names() const noexcept { return coord_names_; }
  const std::vector<Interval>& domain() const noexcept { return domain_; }
  const std::optional<Signature>& signature_hint() const noexcept { return signature_hint_; }

  /// Metric component g_ij; symmetric by construction.
  const Expr& metric(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return metric_[i * dim() - i * (i - 1) / 2 + (j - i)];
  }

  Expr parse_expr(std::string_view text) const { return warpsol::parse_expr(text, coord_names_); }

  Matrix metric_at(const Point& pt) const {
    check_point(pt);
    const auto d = static_cast<Eigen::Index>(dim());
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i; j < d; ++j)
        g(i, j) = g(j, i) = evaluate(metric(static_cast<std::size_t>(i),
                                            static_cast<std::size_t>(j)),
                                     pt.span());
    return g;
  }

  void check_point(const Point& pt) const {
    if (pt.dim() != dim())
      throw std::invalid_argument("point dimension " + std::to_string(pt.dim()) +
                                  " does not match chart '" + name_ + "' of dimension " +
                                  std::to_string(dim()));
  }

 private:
  std::string name_;
  std::vector<std::string> coord_names_;
  std::vector<Interval> domain_;
  std::vector<Expr> metric_;  // packed upper triangle
  std::optional<Signature> signature_hint_;
};

struct ScalarField {
  Expr expr;

  static ScalarField parse(const ChartManifold& m, std::string_view text) {
    return {m.parse_expr(text)};
  }
};

/// Contravariant components X^i.
struct VectorField {
  std::vector<Expr> components;

  std::size_t dim() const noexcept { return components.size(); }

  static VectorField zero(std::size_t d) {
    return {std::vector<Expr>(d, Expr::constant(0.0))};
  }

  static VectorField parse(const ChartManifold& m, const std::vector<std::string>& texts) {
    if (texts.size() != m.dim())
      throw ValidationError(m.name(), "vector field needs " + std::to_string(m.dim()) +
                                          " components");
    VectorField v;
    for (const auto& t : texts) v.components.push_back(m.parse_expr(t));
    return v;
  }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r;
    for (std::size_t i = 0; i < a.dim(); ++i)
      r.components.push_back(a.components[i] + b.components[i]);
    return r;
  }
};

class SolitonParams {
 public:
  SolitonParams(double lambda, double pressure, int n_conv)
      : lambda_(lambda), pressure_(pressure), n_conv_(n_conv) {
    if (n_conv < 1) throw std::invalid_argument("n_conv must be >= 1");
  }

  double lambda() const noexcept { return lambda_; }
  double pressure() const noexcept { return pressure_; }
  int n_conv() const noexcept { return n_conv_; }
  /// mu = 2 lambda - (p + 2/n)
  double mu() const noexcept { return 2.0 * lambda_ - (pressure_ + 2.0 / n_conv_); }

  SolitonParams with_n_conv(int n) const { return {lambda_, pressure_, n}; }

 private:
  double lambda_;
  double pressure_;
  int n_conv_;
};

inline double mu_value(const SolitonParams& params) { return params.mu(); }

enum class SolitonKind { shrinking, steady, expanding };

inline SolitonKind classify_lambda(double lambda) {
  if (lambda > 0.0) return SolitonKind::shrinking;
  if (lambda < 0.0) return SolitonKind::expanding;
  return SolitonKind::steady;
}

inline std::string_view to_string(SolitonKind k) {
  switch (k) {
    case SolitonKind::shrinking: return "shrinking";
    case SolitonKind::steady: return "steady";
    case SolitonKind::expanding: return "expanding";
  }
  return "?";
}

struct SamplePlan {
  std::size_t count = 64;
  std::uint64_t seed = 42;
  double margin = 0.05;

  void validate() const {
    if (count == 0) throw std::invalid_argument("sample count must be positive");
    // margin == 0.5 collapses every interval and surfaces as EmptyDomain.
    if (!(margin >= 0.0 && margin <= 0.5))
      throw std::invalid_argument("sample margin must lie in [0, 0.5)");
  }
};

/// Interval ends beyond this magnitude are clamped before sampling.
inline constexpr double kSamplingClamp = 10.0;

namespace detail {

// splitmix64: fully specified, so sequences match across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in the open interval (0, 1).
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace detail

/// Deterministic points inside the margin-shrunk box of `domain`.
inline std::vector<Point> sample_points(std::span<const Interval> domain, const SamplePlan& plan) {
  plan.validate();
  std::vector<Interval> box;
  for (const auto& iv : domain) {
    const double a = std::max(iv.lower, -kSamplingClamp);
    const double b = std::min(iv.upper, kSamplingClamp);
    const double shrink = plan.margin * (b - a);
    const Interval s{a + shrink, b - shrink};
    if (!(s.lower < s.upper)) throw EmptyDomain("sampling interval collapses after margin shrink");
    box.push_back(s);
  }
  detail::SplitMix64 rng(plan.seed);
  std::vector<Point> pts;
  pts.reserve(plan.count);
  for (std::size_t k = 0; k < plan.count; ++k) {
    Point p;
    p.coords.reserve(box.size());
    for (const auto& iv : box) {
      double x = iv.lower + rng.uniform() * (iv.upper - iv.lower);
      // Rounding can land on the upper end of a tiny interval.
      if (!(x < iv.upper)) x = std::nextafter(iv.upper, iv.lower);
      p.coords.push_back(x);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

inline std::vector<Point> sample_points(const ChartManifold& m, const SamplePlan& plan) {
  return sample_points(m.domain(), plan);
}

}  // namespace warpsol
