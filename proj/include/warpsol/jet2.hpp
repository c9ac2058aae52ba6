#pragma once

// Second-order forward-mode jets: value, gradient and Hessian of a scalar
// function of d variables, propagated exactly through arithmetic.

#include <Eigen/Dense>

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace warpsol {

class Jet2 {
 public:
  Jet2() = default;

  /// Constant jet: zero gradient and Hessian.
  explicit Jet2(std::size_t dim, double value = 0.0)
      : value_(value), grad_(dim, 0.0), hess_(dim * (dim + 1) / 2, 0.0) {}

  /// Jet of the coordinate function x_index at the given value.
  static Jet2 variable(std::size_t dim, std::size_t index, double value) {
    assert(index < dim);
    Jet2 j(dim, value);
    j.grad_[index] = 1.0;
    return j;
  }

  std::size_t dim() const noexcept { return grad_.size(); }
  double value() const noexcept { return value_; }
  double grad(std::size_t i) const { return grad_[i]; }
  std::span<const double> gradient() const noexcept { return grad_; }

  // Only the upper triangle is held, so hess(i, j) == hess(j, i) exactly.
  double hess(std::size_t i, std::size_t j) const {
    return hess_[packed(i, j)];
  }

  Eigen::VectorXd gradient_vector() const {
    return Eigen::Map<const Eigen::VectorXd>(grad_.data(),
                                             static_cast<Eigen::Index>(dim()));
  }

  Eigen::MatrixXd hessian() const {
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd h(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i; j < d; ++j)
        h(i, j) = h(j, i) = hess(static_cast<std::size_t>(i),
                                 static_cast<std::size_t>(j));
    return h;
  }

  /// Composition g(u) given g(u.value), g'(u.value), g''(u.value).
  Jet2 compose(double g0, double g1, double g2) const {
    Jet2 r(dim(), g0);
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) r.grad_[i] = g1 * grad_[i];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        const std::size_t p = packed(i, j);
        r.hess_[p] = g1 * hess_[p] + g2 * grad_[i] * grad_[j];
      }
    return r;
  }

  Jet2 operator-() const {
    Jet2 r(*this);
    r.value_ = -r.value_;
    for (double& g : r.grad_) g = -g;
    for (double& h : r.hess_) h = -h;
    return r;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    assert(a.dim() == b.dim());
    Jet2 r(a);
    r.value_ += b.value_;
    for (std::size_t i = 0; i < r.grad_.size(); ++i) r.grad_[i] += b.grad_[i];
    for (std::size_t i = 0; i < r.hess_.size(); ++i) r.hess_[i] += b.hess_[i];
    return r;
  }

  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    assert(a.dim() == b.dim());
    Jet2 r(a);
    r.value_ -= b.value_;
    for (std::size_t i = 0; i < r.grad_.size(); ++i) r.grad_[i] -= b.grad_[i];
    for (std::size_t i = 0; i < r.hess_.size(); ++i) r.hess_[i] -= b.hess_[i];
    return r;
  }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    assert(a.dim() == b.dim());
    const std::size_t d = a.dim();
    Jet2 r(d, a.value_ * b.value_);
    for (std::size_t i = 0; i < d; ++i)
      r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        const std::size_t p = r.packed(i, j);
        r.hess_[p] = a.value_ * b.hess_[p] + b.value_ * a.hess_[p] +
                     a.grad_[i] * b.grad_[j] + a.grad_[j] * b.grad_[i];
      }
    return r;
  }

  friend Jet2 operator*(double s, const Jet2& a) {
    Jet2 r(a);
    r.value_ *= s;
    for (double& g : r.grad_) g *= s;
    for (double& h : r.hess_) h *= s;
    return r;
  }

  /// Caller guarantees b.value() != 0.
  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    const double v = b.value_;
    return a * b.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
  }

 private:
  // Row-major upper triangle including the diagonal.
  std::size_t packed(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const std::size_t d = dim();
    return i * d - i * (i - 1) / 2 + (j - i);
  }

  double value_ = 0.0;
  std::vector<double> grad_;
  std::vector<double> hess_;
};

}  // namespace warpsol
