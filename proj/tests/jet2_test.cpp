#include "warpsol/jet2.hpp"

#include <gtest/gtest.h>

#include <cmath>

using warpsol::Jet2;

TEST(Jet2, VariablesAreSeededUnitGradients) {
  const Jet2 y = Jet2::variable(3, 1, 4.0);
  EXPECT_EQ(y.value(), 4.0);
  EXPECT_EQ(y.grad(0), 0.0);
  EXPECT_EQ(y.grad(1), 1.0);
  EXPECT_EQ(y.grad(2), 0.0);
  EXPECT_TRUE(y.hessian().isZero());
}

TEST(Jet2, ProductOfThreeVariables) {
  // f = x y z at (2, 3, 5): grad = (15, 10, 6), off-diagonal Hessian (z, y, x).
  const Jet2 x = Jet2::variable(3, 0, 2.0), y = Jet2::variable(3, 1, 3.0), z = Jet2::variable(3, 2, 5.0);
  const Jet2 f = x * y * z;
  EXPECT_EQ(f.value(), 30.0);
  EXPECT_EQ(f.grad(0), 15.0);
  EXPECT_EQ(f.grad(1), 10.0);
  EXPECT_EQ(f.grad(2), 6.0);
  EXPECT_EQ(f.hess(0, 1), 5.0);
  EXPECT_EQ(f.hess(0, 2), 3.0);
  EXPECT_EQ(f.hess(1, 2), 2.0);
  EXPECT_EQ(f.hess(2, 1), 2.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(f.hess(i, i), 0.0);
}

TEST(Jet2, QuotientMatchesClosedForm) {
  // f = x / y at (1, 2)
  const Jet2 x = Jet2::variable(2, 0, 1.0), y = Jet2::variable(2, 1, 2.0);
  const Jet2 f = x / y;
  EXPECT_DOUBLE_EQ(f.value(), 0.5);
  EXPECT_DOUBLE_EQ(f.grad(0), 0.5);
  EXPECT_DOUBLE_EQ(f.grad(1), -0.25);
  EXPECT_DOUBLE_EQ(f.hess(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(f.hess(0, 1), -0.25);
  EXPECT_DOUBLE_EQ(f.hess(1, 1), 0.25);
}

TEST(Jet2, ComposeIsTheChainRule) {
  // sin(x*y) at (0.3, 0.7)
  const double a = 0.3, b = 0.7;
  const Jet2 u = Jet2::variable(2, 0, a) * Jet2::variable(2, 1, b);
  const Jet2 f = u.compose(std::sin(a * b), std::cos(a * b), -std::sin(a * b));
  EXPECT_DOUBLE_EQ(f.grad(0), b * std::cos(a * b));
  EXPECT_DOUBLE_EQ(f.hess(0, 0), -b * b * std::sin(a * b));
  EXPECT_DOUBLE_EQ(f.hess(0, 1), std::cos(a * b) - a * b * std::sin(a * b));
}

TEST(Jet2, LinearCombinations) {
  const Jet2 x = Jet2::variable(2, 0, 1.5), y = Jet2::variable(2, 1, -0.5);
  const Jet2 f = 2.0 * x - (-y) + Jet2(2, 1.0);
  EXPECT_EQ(f.value(), 3.0 - 0.5 + 1.0);
  EXPECT_EQ(f.grad(0), 2.0);
  EXPECT_EQ(f.grad(1), 1.0);
}
