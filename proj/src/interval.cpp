#include "simlaw/interval.hpp"

#include <cmath>
#include <cstdio>

namespace simlaw {

bool Interval::is_subset_of(const Interval& other) const {
  const bool lo_ok = lo > other.lo || (lo == other.lo && (lo_open || !other.lo_open));
  const bool hi_ok = hi < other.hi || (hi == other.hi && (hi_open || !other.hi_open));
  return lo_ok && hi_ok;
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

std::string Interval::to_string() const {
  auto num = [](double v) {
    if (std::isinf(v)) return std::string(v < 0 ? "-inf" : "inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  return std::string(lo_open ? "(" : "[") + num(lo) + ", " + num(hi) +
         (hi_open ? ")" : "]");
}

}  // namespace simlaw
