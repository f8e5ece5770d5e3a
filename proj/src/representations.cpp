#include "simlaw/representations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "simlaw/errors.hpp"
#include "simlaw/numeric.hpp"

namespace simlaw {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_increasing(const ScaleFunction& f, const char* what) {
  if (f.monotonicity() != 1) {
    throw ParamError(std::string(what) + " must be strictly increasing, got " + f.describe());
  }
}

double nudge_inside(const Interval& iv, bool lower) {
  const double end = lower ? iv.lo : iv.hi;
  const bool open = lower ? iv.lo_open : iv.hi_open;
  if (!open) return end;
  const double step = 1e-12 * std::max(1.0, std::abs(end));
  return lower ? end + step : end - step;
}

}  // namespace

Representation Representation::fechnerian(ScaleFunction u) {
  require_increasing(u, "fechnerian u");
  return Representation(Fechnerian{std::move(u)});
}

Representation Representation::subtractive(ScaleFunction u, ScaleFunction w) {
  require_increasing(u, "subtractive u");
  require_increasing(w, "subtractive w");
  return Representation(Subtractive{std::move(u), std::move(w)});
}

Representation Representation::gain_control(ScaleFunction u, ScaleFunction sigma) {
  require_increasing(u, "gain-control u");
  return Representation(GainControl{std::move(u), std::move(sigma)});
}

Representation Representation::parallel(ScaleFunction u, ScaleFunction v) {
  return Representation(Parallel{std::move(u), std::move(v)});
}

Representation Representation::balanced_parallel(ScaleFunction nu) {
  return Representation(BalancedParallel{std::move(nu)});
}

std::string Representation::kind() const {
  static const char* const names[] = {"fechnerian", "subtractive", "gainControl", "parallel",
                                      "balancedParallel"};
  return names[variant_.index()];
}

std::string Representation::describe() const {
  return kind() + "(" +
         std::visit(Overloaded{
                        [](const Fechnerian& r) { return "u=" + r.u.describe(); },
                        [](const Subtractive& r) {
                          return "u=" + r.u.describe() + ", w=" + r.w.describe();
                        },
                        [](const GainControl& r) {
                          return "u=" + r.u.describe() + ", sigma=" + r.sigma.describe();
                        },
                        [](const Parallel& r) {
                          return "u=" + r.u.describe() + ", v=" + r.v.describe();
                        },
                        [](const BalancedParallel& r) { return "nu=" + r.nu.describe(); },
                    },
                    variant_) +
         ")";
}

double xi_from_representation(const Representation& rep, double x, double s) {
  using R = Representation;
  return std::visit(Overloaded{
                        [&](const R::Fechnerian& r) { return r.u.invert(s + r.u.eval(x)); },
                        [&](const R::Subtractive& r) { return r.u.invert(s + r.w.eval(x)); },
                        [&](const R::GainControl& r) {
                          return r.u.invert(s * r.sigma.eval(x) + r.u.eval(x));
                        },
                        [&](const R::Parallel& r) { return r.u.eval(x) + r.v.eval(s); },
                        [&](const R::BalancedParallel& r) { return x + r.nu.eval(s); },
                    },
                    rep.variant());
}

ResidualReport representation_residual(const SensitivityFamily& xi, const Representation& rep,
                                        const Grid& grid, double tol) {
  using R = Representation;
  ResidualAccumulator acc("representation_" + rep.kind());
  for (double x : grid.xs()) {
    for (double s : grid.ss()) {
      double r = 0.0;
      try {
        const double v = xi.eval(x, s);
        r = std::visit(
            Overloaded{
                [&](const R::Fechnerian& p) {
                  return relative_residual(s, p.u.eval(v) - p.u.eval(x));
                },
                [&](const R::Subtractive& p) {
                  return relative_residual(s, p.u.eval(v) - p.w.eval(x));
                },
                [&](const R::GainControl& p) {
                  return relative_residual(s * p.sigma.eval(x), p.u.eval(v) - p.u.eval(x));
                },
                [&](const R::Parallel& p) {
                  return relative_residual(v, p.u.eval(x) + p.v.eval(s));
                },
                [&](const R::BalancedParallel& p) {
                  return relative_residual(v, x + p.nu.eval(s));
                },
            },
            rep.variant());
      } catch (const DomainError&) {
        acc.exclude();
        continue;
      }
      acc.add(r, {{"x", x}, {"s", s}});
    }
  }
  return acc.finish(tol);
}

PsychometricFamily::PsychometricFamily(Representation rep, ScaleFunction link, Interval stimulus)
    : rep_(std::move(rep)), link_(std::move(link)), stimulus_(stimulus) {}

double PsychometricFamily::index(double a, double x) const {
  if (!stimulus_.contains(x) || !stimulus_.contains(a)) {
    throw DomainError("psychometric: (a, x) outside " + stimulus_.to_string());
  }
  using R = Representation;
  return std::visit(Overloaded{
                        [&](const R::Fechnerian& r) { return r.u.eval(x) - r.u.eval(a); },
                        [&](const R::Subtractive& r) { return r.u.eval(x) - r.w.eval(a); },
                        [&](const R::GainControl& r) {
                          const double sig = r.sigma.eval(a);
                          if (sig == 0.0) throw DivisionError("gain-control sigma(a) = 0");
                          return (r.u.eval(x) - r.u.eval(a)) / sig;
                        },
                        [&](const R::Parallel& r) { return r.v.invert(x - r.u.eval(a)); },
                        [&](const R::BalancedParallel& r) { return r.nu.invert(x - a); },
                    },
                    rep_.variant());
}

PsychometricFamily make_psychometric(const Representation& rep, const ScaleFunction& link,
                                     Interval stimulus) {
  if (link.monotonicity() != 1) {
    throw NonMonotoneError("psychometric link must be strictly increasing, got " +
                           link.describe());
  }
  const Interval range = link.range();
  if (!(range.lo >= 0.0 && range.hi <= 1.0) || (range.lo == 0.0 && !range.lo_open) ||
      (range.hi == 1.0 && !range.hi_open)) {
    throw LinkRangeError("psychometric link range " + range.to_string() + " leaves ]0, 1[");
  }
  PsychometricFamily pf(rep, link, stimulus);
  if (stimulus.bounded()) {
    const auto as = linspace(nudge_inside(stimulus, true), nudge_inside(stimulus, false), 9);
    const auto xs = linspace(nudge_inside(stimulus, true), nudge_inside(stimulus, false), 65);
    for (double a : as) {
      double previous = -std::numeric_limits<double>::infinity();
      double previous_x = 0.0;
      for (double x : xs) {
        double v = 0.0;
        try {
          v = pf.p(a, x);
        } catch (const DomainError&) {
          continue;
        } catch (const RangeError&) {
          continue;
        }
        if (!(v > previous)) {
          throw NonMonotoneError("p_a is not strictly increasing at a = " + std::to_string(a) +
                                 " between x = " + std::to_string(previous_x) + " and " +
                                 std::to_string(x));
        }
        previous = v;
        previous_x = x;
      }
    }
  }
  return pf;
}

double sensitivity_from_psychometric(const PsychometricFamily& pf, double a, double pi) {
  const double target = pf.link().invert(pi);
  const Interval& I = pf.stimulus();
  const auto d = [&](double x) { return pf.index(a, x); };
  const auto end = [&](bool lower) {
    const bool infinite = lower ? !std::isfinite(I.lo) : !std::isfinite(I.hi);
    if (!infinite) return nudge_inside(I, lower);
    // Expand away from the background until the target is passed.
    double step = 1.0;
    const double rising = d(a + 1e-6) >= d(a) ? 1.0 : -1.0;
    while (step < 1e300) {
      const double x = lower ? a - step : a + step;
      const double gap = (d(x) - target) * rising;
      if (lower ? gap <= 0.0 : gap >= 0.0) return x;
      step *= 2.0;
    }
    return lower ? a - step : a + step;
  };
  const double lo = end(true), hi = end(false);
  try {
    return bisect_monotone(d, lo, hi, target, 1e-12);
  } catch (const RangeError&) {
    throw RangeError("probability " + std::to_string(pi) + " is not attained by p_a at a = " +
                     std::to_string(a) + " on " + I.to_string());
  }
}

FamilyProperties check_family_properties(const PsychometricFamily& pf, const Grid& grid,
                                         double tol) {
  const auto& as = grid.xs();
  const auto& pis = grid.ss();
  constexpr double alpha = 0.5;
  FamilyProperties out;

  ResidualAccumulator reached("level_reached");
  for (double a : as) {
    double r = std::numeric_limits<double>::infinity();
    try {
      r = std::abs(pf.p(a, sensitivity_from_psychometric(pf, a, alpha)) - alpha);
    } catch (const Error&) {
      for (double x : as) {
        try {
          r = std::min(r, std::abs(pf.p(a, x) - alpha));
        } catch (const Error&) {
        }
      }
    }
    reached.add(r, {{"a", a}});
  }
  ResidualAccumulator matched("level_matched");
  const double a_lo = as.front(), a_hi = as.back();
  for (double x : as) {
    double r = std::numeric_limits<double>::infinity();
    try {
      const auto q = [&](double a) { return pf.p(a, x); };
      r = std::abs(q(bisect_monotone(q, a_lo, a_hi, alpha, 1e-12)) - alpha);
    } catch (const Error&) {
      for (double a : as) {
        try {
          r = std::min(r, std::abs(pf.p(a, x) - alpha));
        } catch (const Error&) {
        }
      }
    }
    matched.add(r, {{"x", x}});
  }
  out.anchored = ResidualReport::combine("anchored", {reached.finish(tol), matched.finish(tol)},
                                         tol);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> inv(as.size(), std::vector<double>(pis.size(), nan));
  for (std::size_t i = 0; i < as.size(); ++i) {
    for (std::size_t k = 0; k < pis.size(); ++k) {
      try {
        inv[i][k] = sensitivity_from_psychometric(pf, as[i], pis[k]);
      } catch (const RangeError&) {
      } catch (const DomainError&) {
      }
    }
  }
  ResidualAccumulator parallel("parallel");
  for (std::size_t k = 0; k < pis.size(); ++k) {
    for (std::size_t m = k + 1; m < pis.size(); ++m) {
      for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = i + 1; j < as.size(); ++j) {
          const double da = inv[i][k] - inv[i][m];
          const double db = inv[j][k] - inv[j][m];
          if (std::isnan(da) || std::isnan(db)) {
            parallel.exclude();
            continue;
          }
          parallel.add(relative_residual(da, db),
                       {{"a", as[i]}, {"b", as[j]}, {"pi", pis[k]}, {"pi_star", pis[m]}});
        }
      }
    }
  }
  out.parallel = parallel.finish(tol);

  ResidualAccumulator balanced("balanced");
  for (double a : as) {
    for (double b : as) {
      try {
        balanced.add(std::abs(pf.p(a, b) + pf.p(b, a) - 1.0), {{"a", a}, {"b", b}});
      } catch (const DomainError&) {
        balanced.exclude();
      } catch (const RangeError&) {
        balanced.exclude();
      }
    }
  }
  out.balanced = balanced.finish(tol);
  return out;
}

BalancedDecomposition decompose_balanced_parallel(const SensitivityFamily& xi, const Grid& grid,
                                                  double tol) {
  const auto& ss = grid.ss();
  std::vector<std::size_t> mirror(ss.size());
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const double target = 1.0 - ss[i];
    const auto it = std::min_element(ss.begin(), ss.end(), [&](double p, double q) {
      return std::abs(p - target) < std::abs(q - target);
    });
    if (std::abs(*it - target) > 1e-9 * (1.0 + std::abs(target))) {
      throw GridSymmetryError("s = " + std::to_string(ss[i]) + " has no sampled mirror 1 - s");
    }
    mirror[i] = static_cast<std::size_t>(it - ss.begin());
  }

  std::vector<double> nu(ss.size());
  for (std::size_t i = 0; i < ss.size(); ++i) {
    double total = 0.0;
    std::size_t count = 0;
    for (double x : grid.xs()) {
      try {
        total += xi.eval(x, ss[i]) - x;
        ++count;
      } catch (const DomainError&) {
      }
    }
    if (count == 0) throw EmptyGridError("no x sample is defined at s = " + std::to_string(ss[i]));
    nu[i] = total / static_cast<double>(count);
  }

  ResidualAccumulator flat("x_independence");
  for (std::size_t i = 0; i < ss.size(); ++i) {
    for (double x : grid.xs()) {
      try {
        flat.add(relative_residual(xi.eval(x, ss[i]), x + nu[i]), {{"x", x}, {"s", ss[i]}});
      } catch (const DomainError&) {
        flat.exclude();
      }
    }
  }
  ResidualAccumulator odd("antisymmetry");
  for (std::size_t i = 0; i < ss.size(); ++i) {
    odd.add(std::abs(nu[i] + nu[mirror[i]]), {{"s", ss[i]}});
  }
  return {ScaleFunction::interpolant(ss, nu),
          ResidualReport::combine("balanced_parallel", {flat.finish(tol), odd.finish(tol)}, tol)};
}

}  // namespace simlaw
