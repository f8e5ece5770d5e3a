#pragma once

#include <limits>
#include <string>

namespace simlaw {

/// Real interval with independently open or closed ends. Infinite ends are
/// always treated as open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval real_line() { return {}; }
  static Interval positive() {
    return {0.0, std::numeric_limits<double>::infinity(), true, true};
  }
  static Interval nonnegative() {
    return {0.0, std::numeric_limits<double>::infinity(), false, true};
  }

  bool contains(double v) const {
    if (v != v) return false;
    const bool above = lo_open ? v > lo : v >= lo;
    const bool below = hi_open ? v < hi : v <= hi;
    return above && below;
  }
  bool is_subset_of(const Interval& other) const;
  bool bounded() const;
  double width() const { return hi - lo; }
  std::string to_string() const;
};

}  // namespace simlaw
