#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simlaw/errors.hpp"
#include "simlaw/families.hpp"
#include "simlaw/grid.hpp"
#include "simlaw/maps.hpp"
#include "simlaw/report.hpp"
#include "simlaw/scale.hpp"

namespace simlaw {

struct Sample {
  double x, s, xi;
};

struct SampleSet {
  std::vector<Sample> rows;
  std::optional<double> noise_sigma;
};

/// Samples xi on every (x, s) node of the grid, row order s-major.
SampleSet sample_family(const SensitivityFamily& xi, const Grid& grid);

struct FitResult {
  std::string kind;
  NamedValues params;
  std::vector<std::pair<std::string, ScaleFunction>> scales;
  ResidualReport residual;
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> notes;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, FitResult best)
      : Error(what), best_(std::move(best)) {}
  const FitResult& best() const { return best_; }

 private:
  FitResult best_;
};

struct PowerFit {
  std::vector<double> s, kappa, rho;
  FitResult fit;
};

/// Per-s least squares of ln xi on ln x. The residual compares the data with
/// kappa(s) x^rho(s). Throws InsufficientDataError with fewer than three
/// distinct x at some s and NonPositiveError when x or xi is not positive.
PowerFit fit_power_per_s(const SampleSet& samples, double tol = 1e-6);

struct PhiFormFit {
  ScaleFunction Phi, f, g;
  ResidualReport report;
};

/// f(s) = eta^{-1}(s, s_star) (inverted numerically over the lambda
/// samples' hull), g(s) = gamma(f(s), s_star), Phi(x) = xi_{s_star}(x); the
/// report holds g(s) xi_s(x) - Phi(f(s) x) for sampled s inside
/// eta(J, s_star). Points with f(s) x outside I are excluded.
PhiFormFit extract_phi_form(const SensitivityFamily& xi, const EtaMap& eta, const GammaMap& gamma,
                            double s_star, const Grid& grid, double tol = 1e-10);

/// Kinds accepted by fit_family with their parameter names.
const std::vector<std::pair<std::string, std::vector<std::string>>>& fit_kinds();

/// The catalog family a fitted parameter vector stands for. weber and power
/// use constant coefficient functions.
SensitivityFamily family_from_params(const std::string& kind, const NamedValues& params);

/// Damped Gauss-Newton (Levenberg schedule) on sum (model - xi)^2 over the
/// training rows; every fifth row (index % 5 == 4) is held out for the
/// residual report. Throws DivergenceError after 20 consecutive increasing
/// steps and ConstraintError when `init` is infeasible.
FitResult fit_family(const SampleSet& samples, const std::string& kind, const NamedValues& init,
                     double tol = 1e-7);

struct SubtractiveFit {
  ScaleFunction u, w;
  FitResult fit;
};

/// Piecewise-linear increasing u, w with u(xi) = s + w(x). Knots sit at the
/// distinct data values when there are at most `knot_count` of them and at
/// quantiles otherwise. The additive gauge is pinned by u = 0 at the first
/// u knot. Throws NonConvergenceError (carrying the best fit) when the
/// alternating monotone refinement does not settle in 100 rounds.
SubtractiveFit fit_scales_subtractive(const SampleSet& samples, std::size_t knot_count,
                                      double tol = 1e-6);

}  // namespace simlaw
