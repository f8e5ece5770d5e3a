#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace simlaw {

using NamedPoint = std::vector<std::pair<std::string, double>>;

/// Outcome of a residual sweep.
///
/// Invariants: max_abs >= mean_abs >= 0 and pass == (max_abs <= tolerance).
/// A report may aggregate named components (for example cocycle and boundary
/// residuals); its figures are then taken over all components and it passes
/// only when every component passes.
struct ResidualReport {
  std::string name;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  NamedPoint worst_point;
  std::size_t evaluated = 0;
  std::size_t excluded = 0;
  double tolerance = 0.0;
  bool pass = true;
  std::vector<ResidualReport> components;
  std::vector<std::string> notes;

  const ResidualReport* component(const std::string& component_name) const;
  static ResidualReport combine(std::string name, std::vector<ResidualReport> parts,
                                double tolerance);
};

/// Collects residuals and exclusions during a sweep.
class ResidualAccumulator {
 public:
  explicit ResidualAccumulator(std::string name) : name_(std::move(name)) {}

  void add(double abs_residual, NamedPoint point);
  void exclude(std::size_t count = 1) { excluded_ += count; }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  /// Throws EmptyGridError when nothing was evaluated. With
  /// `enforce_coverage`, throws ExclusionError when more than half of the
  /// visited points were excluded.
  ResidualReport finish(double tolerance, bool enforce_coverage = true) const;

 private:
  std::string name_;
  double max_ = 0.0;
  double sum_ = 0.0;
  std::size_t count_ = 0;
  std::size_t excluded_ = 0;
  NamedPoint worst_;
  std::vector<std::string> notes_;
  bool has_nan_ = false;
};

}  // namespace simlaw
