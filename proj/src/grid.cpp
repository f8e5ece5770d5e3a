#include "simlaw/grid.hpp"

#include <cmath>
#include <string>

#include "simlaw/errors.hpp"
#include "simlaw/numeric.hpp"

namespace simlaw {
namespace {

void validate(const Axis& axis, const char* name) {
  if (axis.samples.empty()) throw ParamError(std::string("grid axis ") + name + " is empty");
  for (std::size_t i = 0; i < axis.samples.size(); ++i) {
    const double v = axis.samples[i];
    if (!std::isfinite(v)) throw ParamError(std::string("grid axis ") + name + " has a non-finite sample");
    if (i > 0 && !(v > axis.samples[i - 1])) {
      throw ParamError(std::string("grid axis ") + name + " must be strictly ascending");
    }
    if (!axis.domain.contains(v)) {
      throw ParamError(std::string("grid axis ") + name + " sample " + std::to_string(v) +
                       " outside its domain " + axis.domain.to_string());
    }
  }
}

}  // namespace

Axis Axis::uniform(double lo, double hi, std::size_t n) {
  return uniform(lo, hi, n, Interval::closed(lo, hi));
}

Axis Axis::uniform(double lo, double hi, std::size_t n, Interval domain) {
  if (n == 0) throw ParamError("axis needs at least one sample");
  if (n > 1 && !(hi > lo)) throw ParamError("axis bounds must satisfy lo < hi");
  return Axis{domain, linspace(lo, hi, n)};
}

Grid::Grid(Axis x, Axis lambda, Axis s)
    : x_(std::move(x)), lambda_(std::move(lambda)), s_(std::move(s)) {
  validate(x_, "x");
  validate(lambda_, "lambda");
  validate(s_, "s");
  const std::size_t nl = lambda_.samples.size();
  closed_.assign(x_.samples.size() * nl, true);
  for (std::size_t ix = 0; ix < x_.samples.size(); ++ix) {
    for (std::size_t il = 0; il < nl; ++il) {
      if (!x_.domain.contains(lambda_.samples[il] * x_.samples[ix])) {
        closed_[ix * nl + il] = false;
        ++filtered_;
      }
    }
  }
}

}  // namespace simlaw
