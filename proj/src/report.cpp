#include "simlaw/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simlaw/errors.hpp"

namespace simlaw {

const ResidualReport* ResidualReport::component(const std::string& component_name) const {
  for (const auto& c : components) {
    if (c.name == component_name) return &c;
  }
  return nullptr;
}

ResidualReport ResidualReport::combine(std::string name, std::vector<ResidualReport> parts,
                                       double tolerance) {
  ResidualReport out;
  out.name = std::move(name);
  out.tolerance = tolerance;
  double weighted = 0.0;
  bool first = true;
  for (const auto& p : parts) {
    out.evaluated += p.evaluated;
    out.excluded += p.excluded;
    weighted += p.mean_abs * static_cast<double>(p.evaluated);
    out.pass = out.pass && p.pass;
    if (first || p.max_abs > out.max_abs || std::isnan(p.max_abs)) {
      out.max_abs = p.max_abs;
      out.worst_point = p.worst_point;
      first = false;
    }
  }
  out.mean_abs = out.evaluated > 0 ? weighted / static_cast<double>(out.evaluated) : 0.0;
  if (out.mean_abs > out.max_abs) out.mean_abs = out.max_abs;
  out.pass = out.pass && out.max_abs <= tolerance;
  out.components = std::move(parts);
  return out;
}

void ResidualAccumulator::add(double abs_residual, NamedPoint point) {
  ++count_;
  if (std::isnan(abs_residual)) {
    if (!has_nan_) worst_ = std::move(point);
    has_nan_ = true;
    return;
  }
  sum_ += abs_residual;
  if (count_ == 1 || abs_residual > max_) {
    max_ = abs_residual;
    if (!has_nan_) worst_ = std::move(point);
  }
}

ResidualReport ResidualAccumulator::finish(double tolerance, bool enforce_coverage) const {
  if (count_ == 0) {
    throw EmptyGridError(name_ + ": every grid point was excluded (" +
                         std::to_string(excluded_) + " exclusions)");
  }
  if (enforce_coverage && excluded_ > count_) {
    throw ExclusionError(name_ + ": " + std::to_string(excluded_) + " of " +
                         std::to_string(excluded_ + count_) +
                         " grid points were excluded (more than half)");
  }
  ResidualReport r;
  r.name = name_;
  r.max_abs = has_nan_ ? std::numeric_limits<double>::quiet_NaN() : max_;
  r.mean_abs = has_nan_ ? std::numeric_limits<double>::quiet_NaN()
                        : std::min(max_, sum_ / static_cast<double>(count_));
  r.worst_point = worst_;
  r.evaluated = count_;
  r.excluded = excluded_;
  r.tolerance = tolerance;
  r.pass = !has_nan_ && max_ <= tolerance;
  r.notes = notes_;
  return r;
}

}  // namespace simlaw
