#include "simlaw/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "simlaw/errors.hpp"
#include "simlaw/fitting.hpp"
#include "simlaw/numeric.hpp"

namespace simlaw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string filtered_note(const Grid& grid) {
  return std::to_string(grid.filtered_pairs()) + " (x, lambda) pairs outside I*J closure";
}

// Sweeps x, lambda, s with closure filtering; `residual` returns nullopt to
// exclude a point.
template <class Fn>
ResidualReport sweep(const std::string& name, const Grid& grid, double tol, Fn residual) {
  ResidualAccumulator acc(name);
  const auto& xs = grid.xs();
  const auto& lams = grid.lambdas();
  for (std::size_t ix = 0; ix < xs.size(); ++ix) {
    for (std::size_t il = 0; il < lams.size(); ++il) {
      if (!grid.closed(ix, il)) continue;
      for (double s : grid.ss()) {
        std::optional<double> r;
        try {
          r = residual(xs[ix], lams[il], s);
        } catch (const DomainError&) {
        } catch (const DivisionError&) {
        } catch (const RangeError&) {
        }
        if (r) {
          acc.add(*r, {{"x", xs[ix]}, {"lambda", lams[il]}, {"s", s}});
        } else {
          acc.exclude();
        }
      }
    }
  }
  if (grid.filtered_pairs() > 0) acc.note(filtered_note(grid));
  return acc.finish(tol);
}

}  // namespace

ResidualReport iverson_residual(const SensitivityFamily& xi, const GammaMap& gamma,
                                const EtaMap& eta, const Grid& grid, double tol) {
  const Interval& S = grid.s().domain;
  return sweep("iverson", grid, tol, [&](double x, double l, double s) -> std::optional<double> {
    const double t = eta.eval(l, s);
    if (!S.contains(t)) return std::nullopt;
    const double lhs = xi.eval(l * x, s);
    return relative_residual(lhs, gamma.eval(l, s) * xi.eval(x, t));
  });
}

ResidualReport weber_residual(const SensitivityFamily& xi, const Grid& grid, double tol) {
  ResidualReport r =
      iverson_residual(xi, GammaMap::lambda_only(), EtaMap::identity_in_s(), grid, tol);
  r.name = "weber";
  return r;
}

ResidualReport power_law_residual(const SensitivityFamily& xi, const ScaleFunction& phi,
                                  const Grid& grid, double tol) {
  return sweep("power_law", grid, tol, [&](double x, double l, double s) -> std::optional<double> {
    const double lhs = xi.eval(l * x, s);
    return relative_residual(lhs, std::pow(l, phi.eval(s)) * xi.eval(x, s));
  });
}

ResidualReport shift_invariance_residual(const SensitivityFamily& xi, double theta,
                                         const Grid& grid, double tol) {
  const Interval& S = grid.s().domain;
  return sweep("shift_invariance", grid, tol,
               [&](double x, double l, double s) -> std::optional<double> {
                 const double t = std::pow(l, theta) * s;
                 if (!std::isfinite(t) || !S.contains(t)) return std::nullopt;
                 const double lhs = xi.eval(l * x, t);
                 return relative_residual(lhs, l * xi.eval(x, s));
               });
}

LundbergSolution make_lundberg_case(int case_number, const std::map<std::string, double>& params,
                                    const Interval& x_interval, const Interval& y_interval,
                                    RealFn ell) {
  static const std::map<int, std::vector<std::string>> names = {
      {1, {"alpha", "rho", "beta", "b", "tau"}},
      {2, {"alpha", "rho", "c", "kappa", "beta", "d", "delta", "tau", "b"}},
      {3, {"rho", "alpha", "b", "kappa", "beta", "d", "tau", "eps"}},
      {4, {"alpha", "rho", "kappa", "beta", "b", "c", "delta", "tau"}},
      {5, {"alpha", "rho", "delta", "beta", "eps", "c", "tau", "b"}},
  };
  const auto spec = names.find(case_number);
  if (spec == names.end()) {
    throw ParamError("Lundberg case must be 1..5, got " + std::to_string(case_number));
  }
  for (const auto& [key, value] : params) {
    if (std::find(spec->second.begin(), spec->second.end(), key) == spec->second.end()) {
      throw ParamError("Lundberg case " + std::to_string(case_number) + ": unknown parameter '" +
                       key + "'");
    }
  }
  const auto p = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) {
      throw ParamError("Lundberg case " + std::to_string(case_number) + ": missing parameter '" +
                       key + "'");
    }
    return it->second;
  };
  if (case_number != 1 && ell) {
    throw ParamError("only Lundberg case 1 takes a caller-supplied ell");
  }

  LundbergSolution sol;
  sol.case_number = case_number;
  switch (case_number) {
    case 1: {
      const double alpha = p("alpha"), rho = p("rho"), beta = p("beta"), b = p("b"),
                   tau = p("tau");
      if (!ell) ell = [](double x) { return x; };
      sol.f = [=](double x) { return alpha + rho * x; };
      sol.g = [=](double x) { return beta + b * x; };
      sol.h = [=](double x) { return -tau + rho * b * x; };
      sol.ell = ell;
      sol.m = [=](double x) { return rho * ell(x) - rho * b * x + alpha + rho * beta + tau; };
      break;
    }
    case 2: {
      const double alpha = p("alpha"), rho = p("rho"), c = p("c"), kappa = p("kappa"),
                   beta = p("beta"), d = p("d"), delta = p("delta"), tau = p("tau"), b = p("b");
      if (kappa == 0.0) throw ParamError("Lundberg case 2: kappa must be nonzero");
      sol.f = [=](double x) { return alpha + rho * std::log(c + std::exp(kappa * x)); };
      sol.g = [=](double x) { return std::log(-beta * c + d * std::exp(delta * x)) / kappa; };
      sol.h = [=](double x) {
        return -tau + alpha + rho * std::log(b * c + d * std::exp(delta * x));
      };
      sol.ell = [=](double x) { return -std::log(beta + b * std::exp(-delta * x)) / kappa; };
      sol.m = [=](double x) { return tau - rho * std::log(b + beta * std::exp(delta * x)); };
      break;
    }
    case 3: {
      const double rho = p("rho"), alpha = p("alpha"), b = p("b"), kappa = p("kappa"),
                   beta = p("beta"), d = p("d"), tau = p("tau"), eps = p("eps");
      if (kappa == 0.0) throw ParamError("Lundberg case 3: kappa must be nonzero");
      sol.f = [=](double x) { return rho * std::log(alpha - b * std::exp(kappa * x)); };
      sol.g = [=](double x) { return std::log(beta - d * alpha * x) / kappa; };
      sol.h = [=](double x) {
        return -tau + rho * std::log(b * d * alpha * x + alpha * eps - b * beta);
      };
      sol.ell = [=](double x) { return -std::log(eps + b * d * x) / kappa; };
      sol.m = [=](double x) { return tau - rho * std::log(eps + b * d * x); };
      break;
    }
    case 4: {
      const double alpha = p("alpha"), rho = p("rho"), kappa = p("kappa"), beta = p("beta"),
                   b = p("b"), c = p("c"), delta = p("delta"), tau = p("tau");
      if (kappa == 0.0) throw ParamError("Lundberg case 4: kappa must be nonzero");
      sol.f = [=](double x) { return alpha + rho * std::exp(kappa * x); };
      sol.g = [=](double x) { return beta + std::log(b + c * std::exp(delta * x)) / kappa; };
      sol.h = [=](double x) { return -tau + alpha + rho * c * std::exp(delta * x); };
      sol.ell = [=](double x) { return -beta + (delta / kappa) * x; };
      sol.m = [=](double x) { return tau + rho * b * std::exp(delta * x); };
      break;
    }
    case 5: {
      const double alpha = p("alpha"), rho = p("rho"), delta = p("delta"), beta = p("beta"),
                   eps = p("eps"), c = p("c"), tau = p("tau"), b = p("b");
      if (delta == 0.0) throw ParamError("Lundberg case 5: delta must be nonzero");
      sol.f = [=](double x) { return alpha + (rho / delta) * std::log(beta + x); };
      sol.g = [=](double x) { return -beta - eps + c * std::exp(delta * x); };
      sol.h = [=](double x) {
        return -tau + alpha + (rho / delta) * std::log(b + c * std::exp(delta * x));
      };
      sol.ell = [=](double x) { return eps + b * std::exp(-delta * x); };
      sol.m = [=](double x) { return tau - rho * x; };
      break;
    }
  }

  if (!x_interval.bounded() || !y_interval.bounded()) {
    throw ParamError("Lundberg probe intervals must be bounded");
  }
  const auto xs = linspace(x_interval.lo, x_interval.hi, 33);
  const auto ys = linspace(y_interval.lo, y_interval.hi, 33);
  const auto finite = [&](const char* name, double v, double at) {
    if (!std::isfinite(v)) {
      throw ParamError("Lundberg case " + std::to_string(case_number) + ": " + name +
                       " is not real at " + std::to_string(at));
    }
  };
  for (double x : xs) {
    finite("ell", sol.ell(x), x);
    finite("m", sol.m(x), x);
    for (double y : ys) {
      finite("g", sol.g(y), y);
      finite("h", sol.h(x + y), x + y);
      finite("f", sol.f(sol.ell(x) + sol.g(y)), sol.ell(x) + sol.g(y));
    }
  }

  const auto constant_on = [](const RealFn& fn, const std::vector<double>& pts) {
    double lo = kInf, hi = -kInf;
    for (double t : pts) {
      const double v = fn(t);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo <= 1e-12 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  };
  std::vector<double> sums;
  for (double x : xs) sums.push_back(x + ys.front());
  for (double y : ys) sums.push_back(xs.back() + y);
  sol.philandering =
      !constant_on(sol.ell, xs) && !constant_on(sol.m, xs) && !constant_on(sol.h, sums);
  return sol;
}

ResidualReport lundberg_residual(const LundbergSolution& sol, const std::vector<double>& xs,
                                 const std::vector<double>& ys, double tol) {
  ResidualAccumulator acc("lundberg_case_" + std::to_string(sol.case_number));
  for (double x : xs) {
    for (double y : ys) {
      const double r = sol.f(sol.ell(x) + sol.g(y)) - sol.m(x) - sol.h(x + y);
      acc.add(std::abs(r), {{"x", x}, {"y", y}});
    }
  }
  return acc.finish(tol);
}

bool Classification::has(const std::string& label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

Classification classify_laws(const SensitivityFamily& xi, const Grid& grid, double tol) {
  Classification out;
  out.weber = weber_residual(xi, grid, tol);
  if (out.weber.pass) out.labels.push_back("WEBER");

  SampleSet samples;
  bool positive = true;
  for (double s : grid.ss()) {
    for (double x : grid.xs()) {
      double v = 0.0;
      try {
        v = xi.eval(x, s);
      } catch (const DomainError&) {
        continue;
      }
      if (!(x > 0.0) || !(v > 0.0)) positive = false;
      samples.rows.push_back({x, s, v});
    }
  }
  if (!positive) {
    out.notes.push_back("power law not assessed: log-log regression needs x > 0 and xi > 0");
  } else {
    try {
      const PowerFit fit = fit_power_per_s(samples);
      out.phi_hat = ScaleFunction::interpolant(fit.s, fit.rho);
      for (std::size_t i = 0; i < fit.s.size(); ++i) out.phi_knots.push_back({fit.s[i], fit.rho[i]});
      out.power_law = power_law_residual(xi, *out.phi_hat, grid, tol);
      if (out.power_law->pass) out.labels.push_back("POWER_LAW");
    } catch (const InsufficientDataError& e) {
      out.notes.push_back(std::string("power law not assessed: ") + e.what());
    }
  }

  const auto objective = [&](double theta) {
    if (std::abs(theta) < 0.05) return kInf;
    try {
      const double v = shift_invariance_residual(xi, theta, grid, tol).max_abs;
      return std::isnan(v) ? kInf : v;
    } catch (const Error&) {
      return kInf;
    }
  };
  std::vector<double> thetas(81), values(81);
  std::size_t best = 0;
  for (std::size_t i = 0; i < 81; ++i) {
    thetas[i] = -4.0 + 8.0 * static_cast<double>(i) / 80.0;
    values[i] = objective(thetas[i]);
    if (values[i] < values[best]) best = i;
  }
  if (std::isfinite(values[best])) {
    double a = thetas[best > 0 ? best - 1 : 0];
    double b = thetas[best < 80 ? best + 1 : 80];
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = objective(c), fd = objective(d);
    for (int iter = 0; iter < 80 && b - a > 1e-10; ++iter) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - ratio * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + ratio * (b - a);
        fd = objective(d);
      }
    }
    double theta = fc <= fd ? c : d;
    if (std::min(fc, fd) > values[best]) theta = thetas[best];
    out.theta_hat = theta;
    out.shift = shift_invariance_residual(xi, theta, grid, tol);
    if (out.shift->pass) out.labels.push_back("SHIFT");
  } else {
    out.notes.push_back("shift invariance not assessed: no admissible theta in [-4, 4]");
  }

  if (out.labels.empty()) out.labels.push_back("GENERAL");
  return out;
}

}  // namespace simlaw
