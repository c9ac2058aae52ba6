#include "warpsol/expr.hpp"
#include "warpsol/manifold.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace warpsol;

namespace {

const std::vector<std::string> kT{"t"};
const std::vector<std::string> kXY{"x", "y"};

Expr parse(std::string_view text, const std::vector<std::string>& coords = kT) {
  return parse_expr(text, coords);
}

double eval_at(std::string_view text, std::vector<double> pt, const std::vector<std::string>& coords) {
  return evaluate(parse(text, coords), pt);
}

}  // namespace

TEST(Parser, PowerOfFunctionCall) {
  const Expr e = parse("sin(t)^2");
  const auto* bin = std::get_if<Expr::Binary>(&e.node().v);
  ASSERT_NE(bin, nullptr);
  EXPECT_EQ(bin->op, BinaryOp::pow);
  EXPECT_EQ(bin->rhs.constant_value(), 2.0);
  const auto* un = std::get_if<Expr::Unary>(&bin->lhs.node().v);
  ASSERT_NE(un, nullptr);
  EXPECT_EQ(un->op, UnaryOp::sin);
  const auto* c = std::get_if<Expr::Coord>(&un->child.node().v);
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->name, "t");
}

TEST(Parser, UnknownIdentifierIsReported) {
  try {
    parse("a*t+b");
    FAIL() << "expected UnknownSymbol";
  } catch (const UnknownSymbol& e) {
    EXPECT_EQ(e.name(), "a");
  }
}

TEST(Parser, NegationBindsLooserThanPower) {
  const Expr e = parse("-t^2");
  const auto* un = std::get_if<Expr::Unary>(&e.node().v);
  ASSERT_NE(un, nullptr);
  EXPECT_EQ(un->op, UnaryOp::neg);
  EXPECT_DOUBLE_EQ(evaluate(e, std::vector<double>{2.0}), -4.0);
}

TEST(Parser, LeftAssociativity) {
  EXPECT_DOUBLE_EQ(eval_at("8-3-2", {0.0}, kT), 3.0);
  EXPECT_DOUBLE_EQ(eval_at("8/4/2", {0.0}, kT), 1.0);
  EXPECT_DOUBLE_EQ(eval_at("2*3+4*5", {0.0}, kT), 26.0);
  EXPECT_DOUBLE_EQ(eval_at("2*(3+4)*5", {0.0}, kT), 70.0);
  EXPECT_DOUBLE_EQ(eval_at("--t", {3.0}, kT), 3.0);
  EXPECT_DOUBLE_EQ(eval_at("x*-y", {2.0, 5.0}, kXY), -10.0);
}

TEST(Parser, NumberFormats) {
  EXPECT_DOUBLE_EQ(eval_at("1.5e2", {0.0}, kT), 150.0);
  EXPECT_DOUBLE_EQ(eval_at("2.5E-1", {0.0}, kT), 0.25);
  EXPECT_DOUBLE_EQ(eval_at("t^0.5", {4.0}, kT), 2.0);
}

TEST(Parser, AllFunctions) {
  const double x = 0.7;
  EXPECT_DOUBLE_EQ(eval_at("sin(t)", {x}, kT), std::sin(x));
  EXPECT_DOUBLE_EQ(eval_at("cos(t)", {x}, kT), std::cos(x));
  EXPECT_DOUBLE_EQ(eval_at("sinh(t)", {x}, kT), std::sinh(x));
  EXPECT_DOUBLE_EQ(eval_at("cosh(t)", {x}, kT), std::cosh(x));
  EXPECT_DOUBLE_EQ(eval_at("tanh(t)", {x}, kT), std::tanh(x));
  EXPECT_DOUBLE_EQ(eval_at("exp(t)", {x}, kT), std::exp(x));
  EXPECT_DOUBLE_EQ(eval_at("log(t)", {x}, kT), std::log(x));
  EXPECT_DOUBLE_EQ(eval_at("sqrt(t)", {x}, kT), std::sqrt(x));
}

TEST(Parser, SyntaxErrorsCarryPositions) {
  const std::pair<const char*, std::size_t> cases[] = {
      {"t+", 2}, {"(t", 2}, {"t)", 1}, {"t^t", 2}, {"", 0}, {"t**2", 2}, {"2 t", 2}, {"t^-2", 2}};
  for (const auto& [text, pos] : cases) {
    try {
      parse(text);
      ADD_FAILURE() << "expected SyntaxError for '" << text << "'";
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.position(), pos) << text;
    }
  }
}

TEST(Parser, ArityAndUnknownFunctions) {
  EXPECT_THROW(parse("sin()"), ArityError);
  EXPECT_THROW(parse("sin(t, t)"), ArityError);
  EXPECT_THROW(parse("sin"), ArityError);
  EXPECT_THROW(parse("foo(t)"), UnknownSymbol);
}

TEST(Parser, CoordinateListIsValidated) {
  EXPECT_THROW(parse_expr("t", std::vector<std::string>{}), std::invalid_argument);
  EXPECT_THROW(parse_expr("t", std::vector<std::string>{"t", "t"}), std::invalid_argument);
}

TEST(Jet, Polynomial) {
  const Jet2 j = eval_jet2(parse("t^2"), std::vector<double>{3.0});
  EXPECT_DOUBLE_EQ(j.value(), 9.0);
  EXPECT_DOUBLE_EQ(j.grad(0), 6.0);
  EXPECT_DOUBLE_EQ(j.hess(0, 0), 2.0);
}

TEST(Jet, ProductRule) {
  const Jet2 j = eval_jet2(parse("sin(x)*y", kXY), std::vector<double>{0.0, 2.0});
  EXPECT_DOUBLE_EQ(j.value(), 0.0);
  EXPECT_DOUBLE_EQ(j.grad(0), 2.0);
  EXPECT_DOUBLE_EQ(j.grad(1), 0.0);
  EXPECT_DOUBLE_EQ(j.hess(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(j.hess(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(j.hess(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(j.hess(1, 1), 0.0);
}

TEST(Jet, ExponentialAgainstCentralDifferences) {
  const Expr e = parse("exp(t)");
  const Jet2 j = eval_jet2(e, std::vector<double>{1.0});
  const double h = 1e-4;
  auto f = [&](double t) { return evaluate(e, std::vector<double>{t}); };
  const double fd1 = (f(1 + h) - f(1 - h)) / (2 * h);
  const double fd2 = (f(1 + h) - 2 * f(1) + f(1 - h)) / (h * h);
  EXPECT_NEAR(j.value(), std::exp(1.0), 1e-15);
  EXPECT_LE(std::fabs(j.grad(0) - fd1) / std::fabs(fd1), 1e-6);
  EXPECT_LE(std::fabs(j.hess(0, 0) - fd2) / std::fabs(fd2), 1e-6);
}

TEST(Jet, ConstantHasZeroDerivatives) {
  const Jet2 j = eval_jet2(parse("3*(2+1)^2 - sin(1)", kXY), std::vector<double>{0.3, 0.4});
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(j.grad(i), 0.0);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(j.hess(i, k), 0.0);
  }
}

TEST(Jet, DomainErrors) {
  EXPECT_THROW(eval_jet2(parse("log(t)"), std::vector<double>{0.0}), DomainError);
  EXPECT_THROW(eval_jet2(parse("log(t)"), std::vector<double>{-1.0}), DomainError);
  EXPECT_THROW(eval_jet2(parse("sqrt(t)"), std::vector<double>{-1.0}), DomainError);
  EXPECT_THROW(eval_jet2(parse("1/t"), std::vector<double>{0.0}), DomainError);
  EXPECT_THROW(eval_jet2(Expr::pow(parse("t"), -1.0), std::vector<double>{0.0}), DomainError);
  EXPECT_THROW(eval_jet2(parse("t^0.5"), std::vector<double>{-4.0}), DomainError);
  EXPECT_NO_THROW(eval_jet2(parse("t^3"), std::vector<double>{-2.0}));
  EXPECT_NO_THROW(eval_jet2(parse("t^2"), std::vector<double>{0.0}));
}

// ---------------------------------------------------------------------------
// Properties over a fixed expression set and seeded points.

namespace {

const char* const kSmooth[] = {
    "sin(x)*cos(y) + x^3 - 2*x*y",
    "exp(x/2)*sinh(y) - cosh(x*y)",
    "tanh(x - y)^2 + log(x + 3)",
    "sqrt(x^2 + y^2 + 1) / (1 + y^2)",
    "-(x - 1)^4 * y + 2.5e-1*x",
    "exp(-x^2)*sin(3*y)",
    "(x + y)^3 / (2 + cos(x))",
};

std::vector<Point> seeded_points() {
  const std::vector<Interval> box{{-1.0, 1.0}, {-1.0, 1.0}};
  return sample_points(box, SamplePlan{64, 2024, 0.0});
}

}  // namespace

TEST(JetProperty, PrintParseRoundTripIsBitExact) {
  for (const char* text : kSmooth) {
    const Expr e = parse(text, kXY);
    const std::string printed = print(e);
    const Expr back = parse(printed, kXY);
    EXPECT_EQ(print(back), printed);
    for (const Point& p : seeded_points()) {
      const Jet2 a = eval_jet2(e, p.span()), b = eval_jet2(back, p.span());
      EXPECT_EQ(a.value(), b.value()) << text;
      for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(a.grad(i), b.grad(i)) << text;
        for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(a.hess(i, k), b.hess(i, k)) << text;
      }
    }
  }
}

TEST(JetProperty, NegativeConstantsAndExponentsRoundTrip) {
  const Expr e = Expr::constant(-2.5) * Expr::pow(parse("x", kXY), -2.0);
  const Expr back = parse(print(e), kXY);
  for (const Point& p : seeded_points()) {
    if (std::fabs(p[0]) < 1e-3) continue;
    EXPECT_NEAR(evaluate(e, p.span()), evaluate(back, p.span()), 1e-12 * std::fabs(evaluate(e, p.span())));
  }
}

TEST(JetProperty, Linearity) {
  const double a = -1.75;
  for (std::size_t k = 0; k + 1 < std::size(kSmooth); ++k) {
    const Expr e1 = parse(kSmooth[k], kXY), e2 = parse(kSmooth[k + 1], kXY);
    const Expr combo = a * e1 + e2;
    for (const Point& p : seeded_points()) {
      const Jet2 lhs = eval_jet2(combo, p.span());
      const Jet2 rhs = a * eval_jet2(e1, p.span()) + eval_jet2(e2, p.span());
      EXPECT_NEAR(lhs.value(), rhs.value(), 1e-13 * (1 + std::fabs(rhs.value())));
      for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(lhs.grad(i), rhs.grad(i), 1e-13 * (1 + std::fabs(rhs.grad(i))));
        for (std::size_t j = 0; j < 2; ++j)
          EXPECT_NEAR(lhs.hess(i, j), rhs.hess(i, j), 1e-13 * (1 + std::fabs(rhs.hess(i, j))));
      }
    }
  }
}

TEST(JetProperty, AgreesWithFiniteDifferences) {
  const double h = 1e-4;
  for (const char* text : kSmooth) {
    const Expr e = parse(text, kXY);
    auto f = [&](double x, double y) { return evaluate(e, std::vector<double>{x, y}); };
    for (const Point& p : seeded_points()) {
      const Jet2 j = eval_jet2(e, p.span());
      const double x = p[0], y = p[1];
      const double gx = (f(x + h, y) - f(x - h, y)) / (2 * h);
      const double gy = (f(x, y + h) - f(x, y - h)) / (2 * h);
      EXPECT_LE(std::fabs(j.grad(0) - gx), 1e-5 * (1 + std::fabs(gx))) << text;
      EXPECT_LE(std::fabs(j.grad(1) - gy), 1e-5 * (1 + std::fabs(gy))) << text;
      const double hxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h);
      const double hyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / (h * h);
      const double hxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
      EXPECT_LE(std::fabs(j.hess(0, 0) - hxx), 1e-3 * (1 + std::fabs(hxx))) << text;
      EXPECT_LE(std::fabs(j.hess(1, 1) - hyy), 1e-3 * (1 + std::fabs(hyy))) << text;
      EXPECT_LE(std::fabs(j.hess(0, 1) - hxy), 1e-3 * (1 + std::fabs(hxy))) << text;
    }
  }
}

TEST(JetProperty, HessianIsExactlySymmetric) {
  for (const char* text : kSmooth)
    for (const Point& p : seeded_points()) {
      const Eigen::MatrixXd h = eval_jet2(parse(text, kXY), p.span()).hessian();
      EXPECT_EQ(h(0, 1), h(1, 0));
    }
}

TEST(Expr, RemapAndShift) {
  const Expr e = parse("x*y^2", kXY);
  const Expr shifted = e.shift(1);
  EXPECT_DOUBLE_EQ(evaluate(shifted, std::vector<double>{99.0, 2.0, 3.0}), 18.0);
  const Expr frozen = e.remap([](const Expr::Coord& c) {
    return c.index == 0 ? Expr::constant(5.0) : Expr::coord(0, c.name);
  });
  EXPECT_DOUBLE_EQ(evaluate(frozen, std::vector<double>{2.0}), 20.0);
}
