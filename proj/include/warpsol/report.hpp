#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace warpsol {

enum class Status { pass, fail, skipped, hypothesis_failed, error };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skipped: return "SKIPPED";
    case Status::hypothesis_failed: return "HYPOTHESIS-FAILED";
    case Status::error: return "FAILED-WITH-ERROR";
  }
  return "?";
}

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::fail;
  std::string message;

  /// PASS iff residual <= tolerance; NaN never passes.
  static Check measured(std::string name, double residual, double tolerance) {
    const bool ok = residual <= tolerance;
    return {std::move(name), residual, tolerance, ok ? Status::pass : Status::fail, {}};
  }

  static Check skipped(std::string name, double tolerance, std::string why) {
    return {std::move(name), 0.0, tolerance, Status::skipped, std::move(why)};
  }

  bool ok() const noexcept { return status == Status::pass || status == Status::skipped; }
};

struct Provenance {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  int n_conv = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  Provenance provenance;
  /// Derived quantities worth surfacing (fitted constants, spreads, ...).
  std::map<std::string, double> notes;

  Check& add(Check c) {
    checks.push_back(std::move(c));
    return checks.back();
  }

  const Check* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  /// Every non-skipped check passed.
  bool passed() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

/// Running maximum that lets a single NaN poison the result.
class MaxTracker {
 public:
  void add(double v) {
    if (std::isnan(v)) nan_ = true;
    else if (v > value_) value_ = v;
  }
  double value() const noexcept { return nan_ ? std::nan("") : value_; }

 private:
  double value_ = 0.0;
  bool nan_ = false;
};

}  // namespace warpsol
