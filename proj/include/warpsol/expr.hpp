#pragma once

// Expression trees over chart coordinates, with a small recursive-descent
// parser, a printer that round-trips, and exact second-order jet evaluation.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' number)?
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'

#include "warpsol/error.hpp"
#include "warpsol/jet2.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace warpsol {

enum class UnaryOp { neg, sin, cos, sinh, cosh, tanh, exp, log, sqrt };
enum class BinaryOp { add, sub, mul, div, pow };

inline std::string_view to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::neg: return "neg";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::sinh: return "sinh";
    case UnaryOp::cosh: return "cosh";
    case UnaryOp::tanh: return "tanh";
    case UnaryOp::exp: return "exp";
    case UnaryOp::log: return "log";
    case UnaryOp::sqrt: return "sqrt";
  }
  return "?";
}

inline std::optional<UnaryOp> function_from_name(std::string_view name) {
  static constexpr std::pair<std::string_view, UnaryOp> table[] = {
      {"sin", UnaryOp::sin},   {"cos", UnaryOp::cos},   {"sinh", UnaryOp::sinh},
      {"cosh", UnaryOp::cosh}, {"tanh", UnaryOp::tanh}, {"exp", UnaryOp::exp},
      {"log", UnaryOp::log},   {"sqrt", UnaryOp::sqrt}};
  for (const auto& [n, op] : table)
    if (n == name) return op;
  return std::nullopt;
}

namespace detail {
struct Node;
}

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  struct Constant {
    double value;
  };
  struct Coord {
    std::size_t index;
    std::string name;
  };
  struct Unary;
  struct Binary;

  Expr() : Expr(constant(0.0)) {}

  static Expr constant(double value);
  static Expr coord(std::size_t index, std::string name);
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr pow(Expr base, double exponent);

  const detail::Node& node() const { return *node_; }

  bool is_constant() const;
  /// Value of a Constant node; nullopt otherwise.
  std::optional<double> constant_value() const;

  /// Replace every coordinate by the expression returned from `f`.
  Expr remap(const std::function<Expr(const Coord&)>& f) const;

  /// Renumber coordinates by adding `offset` to each index.
  Expr shift(std::size_t offset) const {
    return remap([offset](const Coord& c) { return coord(c.index + offset, c.name); });
  }

  friend Expr operator+(const Expr& a, const Expr& b) { return binary(BinaryOp::add, a, b); }
  friend Expr operator-(const Expr& a, const Expr& b) { return binary(BinaryOp::sub, a, b); }
  friend Expr operator*(const Expr& a, const Expr& b) { return binary(BinaryOp::mul, a, b); }
  friend Expr operator/(const Expr& a, const Expr& b) { return binary(BinaryOp::div, a, b); }
  friend Expr operator*(double a, const Expr& b) { return constant(a) * b; }
  Expr operator-() const { return unary(UnaryOp::neg, *this); }

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::Node> node_;
};

struct Expr::Unary {
  UnaryOp op;
  Expr child;
};

struct Expr::Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};

namespace detail {
struct Node {
  std::variant<Expr::Constant, Expr::Coord, Expr::Unary, Expr::Binary> v;
};
}  // namespace detail

inline Expr Expr::constant(double value) {
  return Expr(std::make_shared<const detail::Node>(detail::Node{Constant{value}}));
}

inline Expr Expr::coord(std::size_t index, std::string name) {
  return Expr(std::make_shared<const detail::Node>(
      detail::Node{Coord{index, std::move(name)}}));
}

inline Expr Expr::unary(UnaryOp op, Expr child) {
  return Expr(std::make_shared<const detail::Node>(
      detail::Node{Unary{op, std::move(child)}}));
}

inline Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const detail::Node>(
      detail::Node{Binary{op, std::move(lhs), std::move(rhs)}}));
}

inline Expr Expr::pow(Expr base, double exponent) {
  return binary(BinaryOp::pow, std::move(base), constant(exponent));
}

inline bool Expr::is_constant() const {
  return std::holds_alternative<Constant>(node_->v);
}

inline std::optional<double> Expr::constant_value() const {
  if (const auto* c = std::get_if<Constant>(&node_->v)) return c->value;
  return std::nullopt;
}

inline Expr Expr::remap(const std::function<Expr(const Coord&)>& f) const {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return *this;
        } else if constexpr (std::is_same_v<T, Coord>) {
          return f(n);
        } else if constexpr (std::is_same_v<T, Unary>) {
          return unary(n.op, n.child.remap(f));
        } else {
          return binary(n.op, n.lhs.remap(f), n.rhs.remap(f));
        }
      },
      node_->v);
}

// ---------------------------------------------------------------------------
// Parser

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> coords)
      : text_(text), coords_(coords) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(BinaryOp::add, lhs, term());
      else if (accept('-'))
        lhs = Expr::binary(BinaryOp::sub, lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(BinaryOp::mul, lhs, factor());
      else if (accept('/'))
        lhs = Expr::binary(BinaryOp::div, lhs, factor());
      else
        return lhs;
    }
  }

  Expr factor() {
    if (accept('-')) return Expr::unary(UnaryOp::neg, factor());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) {
      skip_ws();
      if (!starts_number()) throw SyntaxError(pos_, "number after '^'");
      return Expr::pow(base, number());
    }
    return base;
  }

  bool starts_number() const {
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return (c >= '0' && c <= '9') || c == '.';
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }

  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  double number() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    bool digits = false;
    while (p < text_.size() && is_digit(text_[p])) ++p, digits = true;
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (p < text_.size() && is_digit(text_[p])) ++p, digits = true;
    }
    if (!digits) throw SyntaxError(start, "digits");
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q < text_.size() && is_digit(text_[q])) {
        while (q < text_.size() && is_digit(text_[q])) ++q;
        p = q;
      } else {
        throw SyntaxError(q, "exponent digits");
      }
    }
    const std::string literal(text_.substr(start, p - start));
    pos_ = p;
    return std::strtod(literal.c_str(), nullptr);
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "number, identifier or '('");
    if (starts_number()) return Expr::constant(number());
    if (accept('(')) {
      Expr inner = expr();
      expect(')');
      return inner;
    }
    const char c = text_[pos_];
    if (!is_ident_start(c)) throw SyntaxError(pos_, "number, identifier or '('");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    if (peek('(')) {
      const auto fn = function_from_name(name);
      if (!fn) throw UnknownSymbol(name);
      ++pos_;
      if (peek(')')) throw ArityError("function '" + name + "' takes exactly one argument");
      Expr arg = expr();
      if (peek(',')) throw ArityError("function '" + name + "' takes exactly one argument");
      expect(')');
      return Expr::unary(*fn, std::move(arg));
    }
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == name) return Expr::coord(i, name);
    if (function_from_name(name))
      throw ArityError("function '" + name + "' requires an argument");
    throw UnknownSymbol(name);
  }

  std::string_view text_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse `text` as an expression over the named coordinates.
inline Expr parse_expr(std::string_view text, std::span<const std::string> coords) {
  if (coords.empty()) throw std::invalid_argument("parse_expr: empty coordinate list");
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = i + 1; j < coords.size(); ++j)
      if (coords[i] == coords[j])
        throw std::invalid_argument("parse_expr: duplicate coordinate '" + coords[i] + "'");
  return detail::Parser(text, coords).parse();
}

// ---------------------------------------------------------------------------
// Printer

/// Fully parenthesised text that parses back to an equivalent tree.
inline std::string print(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", std::fabs(n.value));
          std::string s(buf);
          if (s.find_first_of(".e") == std::string::npos) s += ".0";
          return std::signbit(n.value) ? "(-" + s + ")" : s;
        } else if constexpr (std::is_same_v<T, Expr::Coord>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          if (n.op == UnaryOp::neg) return "(-" + print(n.child) + ")";
          return std::string(to_string(n.op)) + "(" + print(n.child) + ")";
        } else {
          const std::string l = print(n.lhs);
          switch (n.op) {
            case BinaryOp::add: return "(" + l + "+" + print(n.rhs) + ")";
            case BinaryOp::sub: return "(" + l + "-" + print(n.rhs) + ")";
            case BinaryOp::mul: return "(" + l + "*" + print(n.rhs) + ")";
            case BinaryOp::div: return "(" + l + "/" + print(n.rhs) + ")";
            case BinaryOp::pow: {
              const double c = *n.rhs.constant_value();
              // Negative exponents are not in the grammar; x^-c prints as 1/x^c.
              if (std::signbit(c))
                return "(1.0/(" + l + ")^" + print(Expr::constant(-c)) + ")";
              return "((" + l + ")^" + print(n.rhs) + ")";
            }
          }
          return "";
        }
      },
      e.node().v);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline void check_index(const Expr::Coord& c, std::size_t dim) {
  if (c.index >= dim)
    throw std::invalid_argument("coordinate '" + c.name + "' outside point dimension");
}

// Returns (g, g', g'') at x for the power function x^c, with domain checks.
inline std::array<double, 3> power_derivatives(double x, double c) {
  const bool integral = std::floor(c) == c;
  if (x < 0.0 && !integral) throw DomainError("negative base with non-integer exponent");
  if (x == 0.0) {
    if (c < 0.0) throw DomainError("0 raised to a negative power");
    if (!integral && c < 2.0) throw DomainError("power jet undefined at 0");
  }
  if (c == 0.0) return {1.0, 0.0, 0.0};
  if (c == 1.0) return {x, 1.0, 0.0};
  if (c == 2.0) return {x * x, 2.0 * x, 2.0};
  return {std::pow(x, c), c * std::pow(x, c - 1.0), c * (c - 1.0) * std::pow(x, c - 2.0)};
}

inline std::array<double, 3> unary_derivatives(UnaryOp op, double x) {
  switch (op) {
    case UnaryOp::neg: return {-x, -1.0, 0.0};
    case UnaryOp::sin: return {std::sin(x), std::cos(x), -std::sin(x)};
    case UnaryOp::cos: return {std::cos(x), -std::sin(x), -std::cos(x)};
    case UnaryOp::sinh: return {std::sinh(x), std::cosh(x), std::sinh(x)};
    case UnaryOp::cosh: return {std::cosh(x), std::sinh(x), std::cosh(x)};
    case UnaryOp::tanh: {
      const double t = std::tanh(x);
      const double s = 1.0 - t * t;
      return {t, s, -2.0 * t * s};
    }
    case UnaryOp::exp: {
      const double v = std::exp(x);
      return {v, v, v};
    }
    case UnaryOp::log:
      if (!(x > 0.0)) throw DomainError("log of non-positive value");
      return {std::log(x), 1.0 / x, -1.0 / (x * x)};
    case UnaryOp::sqrt: {
      if (x < 0.0) throw DomainError("sqrt of negative value");
      if (x == 0.0) throw DomainError("sqrt jet undefined at 0");
      const double r = std::sqrt(x);
      return {r, 0.5 / r, -0.25 / (r * x)};
    }
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace detail

/// Plain value of `e` at `point`; no derivative bookkeeping.
inline double evaluate(const Expr& e, std::span<const double> point) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Expr::Coord>) {
          detail::check_index(n, point.size());
          return point[n.index];
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          const double x = evaluate(n.child, point);
          if (n.op == UnaryOp::neg) return -x;
          return detail::unary_derivatives(n.op, x)[0];
        } else {
          const double a = evaluate(n.lhs, point);
          if (n.op == BinaryOp::pow)
            return detail::power_derivatives(a, *n.rhs.constant_value())[0];
          const double b = evaluate(n.rhs, point);
          switch (n.op) {
            case BinaryOp::add: return a + b;
            case BinaryOp::sub: return a - b;
            case BinaryOp::mul: return a * b;
            case BinaryOp::div:
              if (b == 0.0) throw DomainError("division by zero");
              return a / b;
            case BinaryOp::pow: break;
          }
          return 0.0;
        }
      },
      e.node().v);
}

/// Value, gradient and Hessian of `e` at `point`, exact up to rounding.
inline Jet2 eval_jet2(const Expr& e, std::span<const double> point) {
  const std::size_t d = point.size();
  return std::visit(
      [&](const auto& n) -> Jet2 {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return Jet2(d, n.value);
        } else if constexpr (std::is_same_v<T, Expr::Coord>) {
          detail::check_index(n, d);
          return Jet2::variable(d, n.index, point[n.index]);
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          const Jet2 x = eval_jet2(n.child, point);
          if (n.op == UnaryOp::neg) return -x;
          const auto [g0, g1, g2] = detail::unary_derivatives(n.op, x.value());
          return x.compose(g0, g1, g2);
        } else {
          const Jet2 a = eval_jet2(n.lhs, point);
          if (n.op == BinaryOp::pow) {
            const auto [g0, g1, g2] =
                detail::power_derivatives(a.value(), *n.rhs.constant_value());
            return a.compose(g0, g1, g2);
          }
          const Jet2 b = eval_jet2(n.rhs, point);
          switch (n.op) {
            case BinaryOp::add: return a + b;
            case BinaryOp::sub: return a - b;
            case BinaryOp::mul: return a * b;
            case BinaryOp::div:
              if (b.value() == 0.0) throw DomainError("division by zero");
              return a / b;
            case BinaryOp::pow: break;
          }
          return Jet2(d);
        }
      },
      e.node().v);
}

}  // namespace warpsol
