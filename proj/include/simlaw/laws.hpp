#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simlaw/families.hpp"
#include "simlaw/grid.hpp"
#include "simlaw/maps.hpp"
#include "simlaw/report.hpp"
#include "simlaw/scale.hpp"

namespace simlaw {

/// xi_s(l x) - gamma(l, s) xi_{eta(l, s)}(x), scaled by 1 + |xi_s(l x)|.
/// Points whose transformed index leaves S, or where any term is undefined,
/// are excluded and counted.
ResidualReport iverson_residual(const SensitivityFamily& xi, const GammaMap& gamma,
                                const EtaMap& eta, const Grid& grid, double tol);

/// Iverson residual with gamma = l and eta = s.
ResidualReport weber_residual(const SensitivityFamily& xi, const Grid& grid, double tol);

/// xi_s(l x) - l^{phi(s)} xi_s(x).
ResidualReport power_law_residual(const SensitivityFamily& xi, const ScaleFunction& phi,
                                  const Grid& grid, double tol);

/// xi_{l^theta s}(l x) - l xi_s(x).
ResidualReport shift_invariance_residual(const SensitivityFamily& xi, double theta,
                                         const Grid& grid, double tol);

using RealFn = std::function<double(double)>;

/// The five functions solving f(l(x) + g(y)) = m(x) + h(x + y).
struct LundbergSolution {
  int case_number = 0;
  RealFn f, g, h, ell, m;
  /// False when h, ell or m is constant on the sampled interval.
  bool philandering = true;
};

/// Parameter names per case:
///   I:   alpha rho beta b tau (ell is supplied by the caller, default x)
///   II:  alpha rho c kappa beta d delta tau b
///   III: rho alpha b kappa beta d tau eps
///   IV:  alpha rho kappa beta b c delta tau
///   V:   alpha rho delta beta eps c tau b
/// Throws ParamError when a parameter is missing or unknown, or when any of
/// the five functions is not a finite real at the probe points of the x and
/// y intervals (both must be bounded).
LundbergSolution make_lundberg_case(int case_number, const std::map<std::string, double>& params,
                                    const Interval& x_interval, const Interval& y_interval,
                                    RealFn ell = {});

/// Absolute residual f(l(x) + g(y)) - m(x) - h(x + y) on the product grid.
ResidualReport lundberg_residual(const LundbergSolution& sol, const std::vector<double>& xs,
                                 const std::vector<double>& ys, double tol);

struct Classification {
  /// Subset of WEBER, POWER_LAW, SHIFT; GENERAL alone when none passes.
  std::vector<std::string> labels;
  ResidualReport weber;
  std::optional<ResidualReport> power_law;
  std::optional<ResidualReport> shift;
  /// Per-s exponent estimate behind POWER_LAW, when the data allowed one.
  std::optional<ScaleFunction> phi_hat;
  std::vector<std::pair<double, double>> phi_knots;  // (s, exponent)
  std::optional<double> theta_hat;
  std::vector<std::string> notes;

  bool has(const std::string& label) const;
};

/// Runs the Weber, power-law and shift-invariance checkers. The shift
/// exponent is searched on [-4, 4] by an 81-point scan refined with golden
/// section; |theta| < 0.05 is skipped since theta -> 0 degenerates to Weber.
Classification classify_laws(const SensitivityFamily& xi, const Grid& grid, double tol);

}  // namespace simlaw
