#pragma once

#include <array>
#include <string>
#include <vector>

namespace simlaw {

/// Values on a rectilinear (a, b) lattice, bilinearly interpolated.
class Table2D {
 public:
  Table2D() = default;
  /// `values[i * b.size() + j]` is the value at (a[i], b[j]).
  Table2D(std::vector<double> a, std::vector<double> b, std::vector<double> values);

  /// Builds the lattice from unordered (a, b, value) rows; every lattice node
  /// must appear exactly once.
  static Table2D from_rows(const std::vector<std::array<double, 3>>& rows);

  double eval(double a, double b) const;
  bool contains(double a, double b) const;

  const std::vector<double>& a_axis() const { return a_; }
  const std::vector<double>& b_axis() const { return b_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> a_, b_, values_;
};

}  // namespace simlaw
