#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace simlaw {

/// Solves f(x) = target on [lo, hi] for a monotone f by bisection. The bracket
/// must contain the target; the result is accurate to `x_tol` in x (or to the
/// floating-point resolution of the bracket, whichever is reached first).
double bisect_monotone(const std::function<double(double)>& f, double lo,
                       double hi, double target, double x_tol = 1e-12);

/// `n` evenly spaced points covering [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Relative residual |a - b| / (1 + |a|).
inline double relative_residual(double a, double b) {
  return std::abs(a - b) / (1.0 + std::abs(a));
}

}  // namespace simlaw
