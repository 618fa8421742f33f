#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace lipkit {

/// Real interval with independently open or closed, possibly infinite,
/// endpoints. Infinite endpoints are always open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  static Interval real_line() { return {}; }
  static Interval closed(double a, double b) { return {a, b, false, false}; }
  static Interval open(double a, double b) { return {a, b, true, true}; }

  bool lo_finite() const noexcept;
  bool hi_finite() const noexcept;
  bool bounded() const noexcept { return lo_finite() && hi_finite(); }
  bool is_real_line() const noexcept { return !lo_finite() && !hi_finite(); }
  /// lo >= hi, i.e. empty or a single point.
  bool degenerate() const noexcept { return !(lo < hi); }

  bool contains(double v) const noexcept;
  bool contains_interior(double v) const noexcept { return v > lo && v < hi; }

  /// Parses "lo,hi,open|closed,open|closed"; endpoints accept inf/-inf.
  static Interval parse(std::string_view text);
  std::string to_string() const;
};

}  // namespace lipkit
