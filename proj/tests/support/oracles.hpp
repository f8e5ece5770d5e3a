#pragma once

// Closed forms written out independently of the library, plus seeded
// parameter draws. Tests compare library output against these.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "simlaw/errors.hpp"
#include "simlaw/grid.hpp"
#include "simlaw/interval.hpp"
#include "simlaw/laws.hpp"

namespace oracle {

inline double rem3(double x, double s) { return x + s; }
inline double fech_exp(double x, double s, double rho) { return std::exp(rho * s) * x; }
inline double sub_case_i(double x, double s, double a, double b, double rho, double r) {
  return a * std::exp(b * rho * s) * std::pow(x, r + rho);
}
inline double sub_case_ii(double x, double s, double a, double c, double rho, double r,
                          double eps) {
  return a * std::pow(c * std::pow(x, r / rho) + s - eps, rho);
}
inline double affine_b(double x, double s, double c, double d) { return std::exp((s - d) / c) * x; }
inline double power(double x, double kappa, double rho) { return kappa * std::pow(x, rho); }
inline double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
inline double logit(double p) { return std::log(p / (1.0 - p)); }

/// (s + 1) x is xi for gain control with u = id, sigma(x) = x.
inline double gain_id(double x, double s) { return (s + 1.0) * x; }

inline simlaw::Grid grid(double xlo, double xhi, std::size_t nx, double llo, double lhi,
                         std::size_t nl, double slo, double shi, std::size_t ns,
                         simlaw::Interval xdom = simlaw::Interval::positive(),
                         simlaw::Interval ldom = simlaw::Interval::positive(),
                         simlaw::Interval sdom = simlaw::Interval::real_line()) {
  return simlaw::Grid(simlaw::Axis::uniform(xlo, xhi, nx, xdom),
                      simlaw::Axis::uniform(llo, lhi, nl, ldom),
                      simlaw::Axis::uniform(slo, shi, ns, sdom));
}

/// The standard 32^3 grid: I = J = [0.5, 2] on ]0, inf[, S = [0, 1].
inline simlaw::Grid standard_grid(std::size_t n = 32) {
  return grid(0.5, 2.0, n, 0.5, 2.0, n, 0.0, 1.0, n);
}

/// Seeded admissible parameter draw for a Lundberg case: candidates are
/// rejected until the library accepts them and the solution is philandering
/// on the probe intervals.
inline std::map<std::string, double> lundberg_draw(int case_number, std::mt19937_64& rng,
                                                   const simlaw::Interval& xi,
                                                   const simlaw::Interval& yi) {
  static const std::map<int, std::vector<std::string>> names = {
      {1, {"alpha", "rho", "beta", "b", "tau"}},
      {2, {"alpha", "rho", "c", "kappa", "beta", "d", "delta", "tau", "b"}},
      {3, {"rho", "alpha", "b", "kappa", "beta", "d", "tau", "eps"}},
      {4, {"alpha", "rho", "kappa", "beta", "b", "c", "delta", "tau"}},
      {5, {"alpha", "rho", "delta", "beta", "eps", "c", "tau", "b"}},
  };
  std::uniform_real_distribution<double> wide(-2.0, 2.0), pos(0.2, 2.0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::map<std::string, double> p;
    for (const auto& n : names.at(case_number)) {
      p[n] = case_number == 1 ? wide(rng) : pos(rng);
    }
    if (case_number == 3) {
      // alpha large enough that the outer logarithm stays real.
      p["alpha"] = 4.0 + 4.0 * pos(rng);
      p["beta"] = 2.0 + pos(rng);
    }
    if (case_number == 1 && (std::abs(p["rho"]) < 0.1 || std::abs(p["b"]) < 0.1)) continue;
    try {
      const auto sol = simlaw::make_lundberg_case(case_number, p, xi, yi);
      if (sol.philandering) return p;
    } catch (const simlaw::ParamError&) {
    }
  }
  throw simlaw::ParamError("no admissible Lundberg draw");
}

}  // namespace oracle
