#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warpsol {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : Error("syntax error at position " + std::to_string(position) +
              ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(std::string name)
      : Error("unknown symbol '" + name + "'"), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of definition (log of non-positive, 1/0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  explicit SingularMetric(double det)
      : Error("metric is singular (|det g| = " + std::to_string(det) + ")"),
        det_(det) {}

  double det() const noexcept { return det_; }

 private:
  double det_;
};

class EmptyDomain : public Error {
 public:
  using Error::Error;
};

class NameClash : public Error {
 public:
  explicit NameClash(const std::string& name)
      : Error("coordinate name '" + name + "' used by both base and fiber") {}
};

class NonPositiveWarping : public Error {
 public:
  NonPositiveWarping(std::string where, double value)
      : Error("warping function is not positive at " + where +
              " (f = " + std::to_string(value) + ")"),
        value_(value) {}

  double value() const noexcept { return value_; }

 private:
  double value_;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Raised when the input does not satisfy a theorem's hypothesis; the
/// theorem's conclusion is then not asserted.
class HypothesisFailed : public Error {
 public:
  HypothesisFailed(std::string what, double max_residual)
      : Error("hypothesis failed: " + what + " (max residual " +
              std::to_string(max_residual) + ")"),
        max_residual_(max_residual) {}

  double max_residual() const noexcept { return max_residual_; }

 private:
  double max_residual_;
};

class ParseError : public Error {
 public:
  ParseError(std::string path, std::string detail)
      : Error(path + ": " + detail), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string name, std::string reason)
      : Error("'" + name + "': " + reason), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace warpsol
