#include "simlaw/numeric.hpp"

#include <stdexcept>

#include "simlaw/errors.hpp"

namespace simlaw {

double bisect_monotone(const std::function<double(double)>& f, double lo,
                       double hi, double target, double x_tol) {
  double f_lo = f(lo) - target;
  double f_hi = f(hi) - target;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw RangeError("bisection target " + std::to_string(target) +
                     " is not bracketed by [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid) - target;
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    // Midpoint of the final bracket is within x_tol / 8 of the root.
    if (hi - lo <= 0.25 * x_tol) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {lo};
  out.reserve(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / denom;
    out.push_back(i + 1 == n ? hi : lo + (hi - lo) * t);
  }
  return out;
}

}  // namespace simlaw
