#include "simlaw/scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>

#include "simlaw/errors.hpp"
#include "simlaw/numeric.hpp"

namespace simlaw {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_odd_integer(double p) {
  return std::floor(p) == p && std::fmod(std::abs(p), 2.0) == 1.0;
}

int sign(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Slack used when a value lands a rounding error outside a range.
double range_slack(double y) { return 1e-12 * (1.0 + std::abs(y)); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ScaleFunction::ScaleFunction(Variant v, Interval domain, int monotonicity)
    : variant_(std::make_shared<const Variant>(std::move(v))),
      domain_(domain),
      monotonicity_(monotonicity) {}

ScaleFunction ScaleFunction::affine(double a, double b, Interval domain) {
  if (a == 0.0) throw NonMonotoneError("affine scale requires a != 0");
  return ScaleFunction(Affine{a, b}, domain, sign(a));
}

ScaleFunction ScaleFunction::log(double a, double b, Interval domain) {
  if (a == 0.0) throw NonMonotoneError("log scale requires a != 0");
  if (domain.lo < 0.0 || (domain.lo == 0.0 && !domain.lo_open)) {
    throw DomainError("log scale domain must lie in (0, inf), got " + domain.to_string());
  }
  return ScaleFunction(Log{a, b}, domain, sign(a));
}

ScaleFunction ScaleFunction::power(double a, double p, double b) {
  return power(a, p, b, p > 0.0 ? Interval::nonnegative() : Interval::positive());
}

ScaleFunction ScaleFunction::power(double a, double p, double b, Interval domain) {
  if (a == 0.0 || p == 0.0) throw NonMonotoneError("power scale requires a != 0 and p != 0");
  if (!std::isfinite(p)) throw NonMonotoneError("power scale exponent must be finite");
  const bool odd = is_odd_integer(p);
  if (domain.lo < 0.0 && !odd) {
    throw DomainError("power scale with exponent " + fmt(p) +
                      " is not strictly monotone on " + domain.to_string());
  }
  if (p < 0.0 && domain.contains(0.0)) {
    throw DomainError("power scale with negative exponent cannot contain 0");
  }
  if (p < 0.0 && domain.lo < 0.0 && domain.hi > 0.0) {
    throw DomainError("power scale with negative exponent cannot straddle 0");
  }
  return ScaleFunction(Power{a, p, b}, domain, sign(a) * sign(p));
}

ScaleFunction ScaleFunction::exp(double a, double k, double b, Interval domain) {
  if (a == 0.0 || k == 0.0) throw NonMonotoneError("exp scale requires a != 0 and k != 0");
  return ScaleFunction(Exp{a, k, b}, domain, sign(a) * sign(k));
}

ScaleFunction ScaleFunction::table(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw ParamError("table scale needs equally many x and y values");
  if (x.size() < 2) throw ParamError("table scale needs at least two knots");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw ParamError("table scale knots must be finite");
    }
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw NonMonotoneError("table knots must be strictly increasing in x (knot " +
                             std::to_string(i) + ")");
    }
  }
  const int dir = sign(y[1] - y[0]);
  if (dir == 0) throw NonMonotoneError("table values must be strictly monotone");
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (sign(y[i] - y[i - 1]) != dir) {
      throw NonMonotoneError("table values must be strictly monotone (knot " +
                             std::to_string(i) + ")");
    }
  }
  const Interval dom = Interval::closed(x.front(), x.back());
  return ScaleFunction(Table{std::move(x), std::move(y)}, dom, dir);
}

ScaleFunction ScaleFunction::table(const std::vector<std::pair<double, double>>& knots) {
  std::vector<double> x, y;
  x.reserve(knots.size());
  y.reserve(knots.size());
  for (const auto& [kx, ky] : knots) {
    x.push_back(kx);
    y.push_back(ky);
  }
  return table(std::move(x), std::move(y));
}

ScaleFunction ScaleFunction::constant(double c, Interval domain) {
  return ScaleFunction(Constant{c}, domain, 0);
}

ScaleFunction ScaleFunction::custom(std::string name, std::function<double(double)> fn,
                                    Interval domain, int monotonicity,
                                    std::function<double(double)> inverse) {
  if (!fn) throw ParamError("custom scale '" + name + "' has no function");
  return ScaleFunction(Custom{std::move(name), std::move(fn), std::move(inverse)}, domain,
                       sign(monotonicity));
}

ScaleFunction ScaleFunction::logistic_table(double half_width, std::size_t knots_per_unit) {
  if (!(half_width > 0.0) || knots_per_unit == 0) {
    throw ParamError("logistic table needs a positive half width and knot density");
  }
  const auto half = static_cast<std::size_t>(std::ceil(half_width * knots_per_unit));
  const double step = half_width / static_cast<double>(half);
  std::vector<double> x(2 * half + 1), y(2 * half + 1);
  for (std::size_t j = 0; j <= half; ++j) {
    const double t = step * static_cast<double>(j);
    const double p = 1.0 / (1.0 + std::exp(-t));
    x[half + j] = t;
    x[half - j] = -t;
    y[half + j] = p;
    y[half - j] = 1.0 / (1.0 + std::exp(t));
  }
  return table(std::move(x), std::move(y));
}

ScaleFunction ScaleFunction::interpolant(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || x.size() != y.size()) {
    throw ParamError("interpolant needs matching, non-empty x and y knots");
  }
  if (x.size() == 1) return ScaleFunction(Constant{y.front()}, Interval::closed(x[0], x[0]), 0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw NonMonotoneError("interpolant knots must ascend in x");
  }
  try {
    return table(x, y);
  } catch (const NonMonotoneError&) {
    // Non-monotone values: fall through to a plain interpolating function.
  }
  const Interval dom = Interval::closed(x.front(), x.back());
  auto fn = [x = std::move(x), y = std::move(y)](double t) {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double w = (t - x[i]) / (x[i + 1] - x[i]);
    return y[i] + w * (y[i + 1] - y[i]);
  };
  return custom("interpolant", std::move(fn), dom, 0);
}

ScaleFunction ScaleFunction::inverse_of(const ScaleFunction& f) {
  if (!f.invertible()) {
    throw NotInvertibleError("cannot invert " + f.describe());
  }
  Interval dom = f.range();
  return custom(
      "inverse(" + f.describe() + ")", [f](double y) { return f.invert(y); }, dom,
      f.monotonicity(), [f](double x) { return f.eval(x); });
}

ScaleFunction ScaleFunction::compose(const ScaleFunction& outer, const ScaleFunction& inner) {
  const int mono = outer.monotonicity() * inner.monotonicity();
  std::function<double(double)> inv;
  if (mono != 0 && outer.invertible() && inner.invertible()) {
    inv = [outer, inner](double y) { return inner.invert(outer.invert(y)); };
  }
  return custom(
      outer.describe() + " o " + inner.describe(),
      [outer, inner](double x) { return outer.eval(inner.eval(x)); }, inner.domain(), mono,
      std::move(inv));
}

double ScaleFunction::eval_unchecked(double x) const {
  return std::visit(
      Overloaded{
          [x](const Affine& f) { return f.a * x + f.b; },
          [x](const Log& f) { return f.a * std::log(x) + f.b; },
          [x](const Power& f) { return f.a * std::pow(x, f.p) + f.b; },
          [x](const Exp& f) { return f.a * std::exp(f.k * x) + f.b; },
          [x](const Table& f) {
            auto it = std::upper_bound(f.x.begin(), f.x.end(), x);
            std::size_t i =
                it == f.x.begin() ? 0 : static_cast<std::size_t>(it - f.x.begin()) - 1;
            if (i + 1 >= f.x.size()) i = f.x.size() - 2;
            if (x == f.x[i]) return f.y[i];
            const double w = (x - f.x[i]) / (f.x[i + 1] - f.x[i]);
            return f.y[i] + w * (f.y[i + 1] - f.y[i]);
          },
          [](const Constant& f) { return f.c; },
          [x](const Custom& f) { return f.fn(x); },
      },
      *variant_);
}

double ScaleFunction::eval(double x) const {
  if (!domain_.contains(x)) {
    throw DomainError(describe() + ": argument " + fmt(x) + " outside domain " +
                      domain_.to_string());
  }
  return eval_unchecked(x);
}

Interval ScaleFunction::range() const {
  if (const auto* c = std::get_if<Constant>(variant_.get())) return Interval::closed(c->c, c->c);
  if (monotonicity_ == 0) return Interval::real_line();
  if (const auto* t = std::get_if<Table>(variant_.get())) {
    const auto [mn, mx] = std::minmax(t->y.front(), t->y.back());
    return Interval::closed(mn, mx);
  }
  // Evaluating the closed-form expression at an infinite or open end yields
  // the one-sided limit in IEEE arithmetic.
  // Custom functions may reject an endpoint; an end that cannot be evaluated
  // is reported as unbounded.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto end_value = [&](double x, double fallback) {
    try {
      const double v = eval_unchecked(x);
      return std::isnan(v) ? fallback : v;
    } catch (const Error&) {
      return fallback;
    }
  };
  const double at_lo = end_value(domain_.lo, monotonicity_ > 0 ? -kInf : kInf);
  const double at_hi = end_value(domain_.hi, monotonicity_ > 0 ? kInf : -kInf);
  const bool lo_open = domain_.lo_open || !std::isfinite(at_lo);
  const bool hi_open = domain_.hi_open || !std::isfinite(at_hi);
  if (monotonicity_ > 0) return {at_lo, at_hi, lo_open, hi_open};
  return {at_hi, at_lo, hi_open, lo_open};
}

bool ScaleFunction::invertible() const {
  if (monotonicity_ == 0) return false;
  if (const auto* c = std::get_if<Custom>(variant_.get())) {
    return static_cast<bool>(c->inverse) || domain_.bounded();
  }
  return true;
}

double ScaleFunction::invert(double y) const {
  if (!invertible()) throw NotInvertibleError(describe() + " is not invertible");
  const Interval rng = range();
  if (!rng.contains(y)) {
    const double slack = range_slack(y);
    const bool near_lo = std::abs(y - rng.lo) <= slack && std::isfinite(rng.lo);
    const bool near_hi = std::abs(y - rng.hi) <= slack && std::isfinite(rng.hi);
    if (!(near_lo && !rng.lo_open) && !(near_hi && !rng.hi_open)) {
      throw RangeError(describe() + ": value " + fmt(y) + " outside range " + rng.to_string());
    }
    y = near_lo ? rng.lo : rng.hi;
  }
  double x = std::visit(
      Overloaded{
          [y](const Affine& f) { return (y - f.b) / f.a; },
          [y](const Log& f) { return std::exp((y - f.b) / f.a); },
          [y](const Power& f) {
            const double base = (y - f.b) / f.a;
            if (base < 0.0) return -std::pow(-base, 1.0 / f.p);  // odd exponent
            return std::pow(base, 1.0 / f.p);
          },
          [y](const Exp& f) { return std::log((y - f.b) / f.a) / f.k; },
          [y](const Table& f) {
            // Bisection over the knot sequence, then the exact linear inverse
            // within the bracketing segment.
            const bool inc = f.y.back() > f.y.front();
            std::size_t lo = 0, hi = f.y.size() - 1;
            while (hi - lo > 1) {
              const std::size_t mid = lo + (hi - lo) / 2;
              if ((f.y[mid] <= y) == inc) {
                lo = mid;
              } else {
                hi = mid;
              }
            }
            if (y == f.y[lo]) return f.x[lo];
            if (y == f.y[hi]) return f.x[hi];
            const double w = (y - f.y[lo]) / (f.y[hi] - f.y[lo]);
            return f.x[lo] + w * (f.x[hi] - f.x[lo]);
          },
          [](const Constant&) -> double { throw NotInvertibleError("constant scale"); },
          [this, y](const Custom& f) {
            if (f.inverse) return f.inverse(y);
            double lo = domain_.lo, hi = domain_.hi;
            if (domain_.lo_open) lo = std::nextafter(lo, hi);
            if (domain_.hi_open) hi = std::nextafter(hi, lo);
            return bisect_monotone(f.fn, lo, hi, y, 0.0);
          },
      },
      *variant_);
  if (!domain_.contains(x)) {
    // Analytic inverses can land a rounding error past a closed endpoint.
    if (std::abs(x - domain_.lo) <= range_slack(x) && !domain_.lo_open) x = domain_.lo;
    if (std::abs(x - domain_.hi) <= range_slack(x) && !domain_.hi_open) x = domain_.hi;
  }
  return x;
}

std::string ScaleFunction::kind() const {
  return std::visit(Overloaded{
                        [](const Affine&) { return std::string("affine"); },
                        [](const Log&) { return std::string("log"); },
                        [](const Power&) { return std::string("power"); },
                        [](const Exp&) { return std::string("exp"); },
                        [](const Table&) { return std::string("table"); },
                        [](const Constant&) { return std::string("constant"); },
                        [](const Custom&) { return std::string("custom"); },
                    },
                    *variant_);
}

std::string ScaleFunction::describe() const {
  return std::visit(
      Overloaded{
          [](const Affine& f) { return "affine(a=" + fmt(f.a) + ", b=" + fmt(f.b) + ")"; },
          [](const Log& f) { return "log(a=" + fmt(f.a) + ", b=" + fmt(f.b) + ")"; },
          [](const Power& f) {
            return "power(a=" + fmt(f.a) + ", p=" + fmt(f.p) + ", b=" + fmt(f.b) + ")";
          },
          [](const Exp& f) {
            return "exp(a=" + fmt(f.a) + ", k=" + fmt(f.k) + ", b=" + fmt(f.b) + ")";
          },
          [](const Table& f) { return "table(" + std::to_string(f.x.size()) + " knots)"; },
          [](const Constant& f) { return "constant(" + fmt(f.c) + ")"; },
          [](const Custom& f) { return f.name; },
      },
      *variant_);
}

}  // namespace simlaw
