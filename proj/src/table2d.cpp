#include "simlaw/table2d.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "simlaw/errors.hpp"

namespace simlaw {
namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.size() < 2) {
    throw ParamError(std::string("table axis ") + name + " needs at least two nodes");
  }
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (!(axis[i] > axis[i - 1])) {
      throw ParamError(std::string("table axis ") + name + " must be strictly ascending");
    }
  }
}

// Index of the cell [axis[i], axis[i+1]] containing v (v inside the axis).
std::size_t cell(const std::vector<double>& axis, double v) {
  auto it = std::upper_bound(axis.begin(), axis.end(), v);
  std::size_t i = it == axis.begin() ? 0 : static_cast<std::size_t>(it - axis.begin()) - 1;
  return std::min(i, axis.size() - 2);
}

}  // namespace

Table2D::Table2D(std::vector<double> a, std::vector<double> b, std::vector<double> values)
    : a_(std::move(a)), b_(std::move(b)), values_(std::move(values)) {
  check_axis(a_, "a");
  check_axis(b_, "b");
  if (values_.size() != a_.size() * b_.size()) {
    throw ParamError("table value count does not match its lattice");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParamError("table values must be finite");
  }
}

Table2D Table2D::from_rows(const std::vector<std::array<double, 3>>& rows) {
  std::map<double, std::size_t> a_index, b_index;
  for (const auto& r : rows) {
    a_index.emplace(r[0], 0);
    b_index.emplace(r[1], 0);
  }
  std::vector<double> a, b;
  for (auto& [k, idx] : a_index) {
    idx = a.size();
    a.push_back(k);
  }
  for (auto& [k, idx] : b_index) {
    idx = b.size();
    b.push_back(k);
  }
  if (rows.size() != a.size() * b.size()) {
    throw ParamError("tabulated rows do not form a complete rectilinear lattice (" +
                     std::to_string(rows.size()) + " rows for " + std::to_string(a.size()) +
                     "x" + std::to_string(b.size()) + " nodes)");
  }
  std::vector<double> values(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& r : rows) {
    const std::size_t k = a_index.at(r[0]) * b.size() + b_index.at(r[1]);
    if (seen[k]) throw ParamError("tabulated rows contain a duplicate lattice node");
    seen[k] = true;
    values[k] = r[2];
  }
  return Table2D(std::move(a), std::move(b), std::move(values));
}

bool Table2D::contains(double a, double b) const {
  return !a_.empty() && a >= a_.front() && a <= a_.back() && b >= b_.front() && b <= b_.back();
}

double Table2D::eval(double a, double b) const {
  if (!contains(a, b)) {
    throw DomainError("point (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") outside tabulated lattice");
  }
  const std::size_t i = cell(a_, a);
  const std::size_t j = cell(b_, b);
  const double ta = (a - a_[i]) / (a_[i + 1] - a_[i]);
  const double tb = (b - b_[j]) / (b_[j + 1] - b_[j]);
  const std::size_t nb = b_.size();
  const double v00 = values_[i * nb + j];
  const double v01 = values_[i * nb + j + 1];
  const double v10 = values_[(i + 1) * nb + j];
  const double v11 = values_[(i + 1) * nb + j + 1];
  // Exact node values at lattice points.
  if (ta == 0.0 && tb == 0.0) return v00;
  return (1.0 - ta) * ((1.0 - tb) * v00 + tb * v01) + ta * ((1.0 - tb) * v10 + tb * v11);
}

}  // namespace simlaw
