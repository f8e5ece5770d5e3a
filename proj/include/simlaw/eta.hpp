#pragma once

#include <utility>

#include "simlaw/grid.hpp"
#include "simlaw/maps.hpp"
#include "simlaw/report.hpp"
#include "simlaw/scale.hpp"

namespace simlaw {

/// Checks that eta is multiplicatively translational on the grid.
///
/// Components: "cocycle" |eta(l*m, s) - eta(m, eta(l, s))| over sampled
/// l, m with l*m in J, "boundary_zero" |eta(l, 0)| and "boundary_identity"
/// |eta(1, s) - s|. The boundaries are evaluated at s = 0 and l = 1, which
/// must lie in the S and J domains. Throws DomainError when eta(l, s) leaves
/// the S domain.
ResidualReport check_mult_translational(const EtaMap& eta, const Grid& grid, double tol);

struct ExtractedH {
  ScaleFunction H;
  /// eta(l, s) against H(l * H^{-1}(s)) on up to 64 lambdas spread over
  /// the sampled J hull, times the sampled S values.
  ResidualReport reconstruction;
};

/// Tabulates H(l) = eta(l, s_star) on the lambda samples of `j_grid`.
/// Throws NotInvertibleError unless the values are strictly monotone in l and
/// cover the hull of the sampled S values.
ExtractedH extract_H(const EtaMap& eta, double s_star, const Grid& j_grid, double tol = 1e-9);

/// eta(l, s) = H(l * H^{-1}(s)).
EtaMap conjugate_eta(const ScaleFunction& H);

/// Pointwise comparison of two eta maps over the (lambda, s) samples.
ResidualReport compare_eta(const EtaMap& expected, const EtaMap& actual, const Grid& grid,
                           double tol);

/// Builds kappa(l) = gamma(l, 1) and h(s) = H^{-1}(s) / H^{-1}(1) and returns
/// the ratio-form gamma together with its residual against `gamma`. Points
/// where kappa(h(s)) vanishes are excluded and noted.
std::pair<GammaMap, ResidualReport> derive_gamma(const GammaMap& gamma, const ScaleFunction& H,
                                                 const Grid& grid, double tol = 1e-10);

/// |phi(s) - phi(eta(l, s))| over the grid.
ResidualReport phi_consistency(const ScaleFunction& phi, const EtaMap& eta, const Grid& grid,
                               double tol);

}  // namespace simlaw
