#pragma once

#include <string>
#include <utility>
#include <variant>

#include "simlaw/families.hpp"
#include "simlaw/grid.hpp"
#include "simlaw/interval.hpp"
#include "simlaw/report.hpp"
#include "simlaw/scale.hpp"

namespace simlaw {

/// A psychophysical representation of a sensitivity function.
class Representation {
 public:
  struct Fechnerian {
    ScaleFunction u;
  };
  struct Subtractive {
    ScaleFunction u, w;
  };
  struct GainControl {
    ScaleFunction u, sigma;
  };
  struct Parallel {
    ScaleFunction u, v;
  };
  struct BalancedParallel {
    ScaleFunction nu;
  };
  using Variant = std::variant<Fechnerian, Subtractive, GainControl, Parallel, BalancedParallel>;

  /// u^{-1}(s + u(x)).
  static Representation fechnerian(ScaleFunction u);
  /// u^{-1}(s + w(x)).
  static Representation subtractive(ScaleFunction u, ScaleFunction w);
  /// u^{-1}(s sigma(x) + u(x)).
  static Representation gain_control(ScaleFunction u, ScaleFunction sigma);
  /// u(x) + v(s).
  static Representation parallel(ScaleFunction u, ScaleFunction v);
  /// x + nu(s).
  static Representation balanced_parallel(ScaleFunction nu);

  const Variant& variant() const { return variant_; }
  std::string kind() const;
  std::string describe() const;

 private:
  explicit Representation(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// xi_s(x) under the representation. RangeError when the argument of u^{-1}
/// falls outside the range of u.
double xi_from_representation(const Representation& rep, double x, double s);

/// The representation's defining identity evaluated on xi, e.g.
/// s - [u(xi_s(x)) - w(x)] for the subtractive variant. Points where xi
/// leaves the domain of u are excluded.
ResidualReport representation_residual(const SensitivityFamily& xi, const Representation& rep,
                                        const Grid& grid, double tol);

/// p_a(x) = F(d(a, x)), where d(a, x) solves xi_d(a) = x:
///   fechnerian u(x) - u(a); subtractive u(x) - w(a);
///   gainControl (u(x) - u(a)) / sigma(a); parallel v^{-1}(x - u(a));
///   balancedParallel nu^{-1}(x - a).
class PsychometricFamily {
 public:
  PsychometricFamily(Representation rep, ScaleFunction link, Interval stimulus);

  /// d(a, x), the index at which background a is matched by x.
  double index(double a, double x) const;
  double p(double a, double x) const { return link_.eval(index(a, x)); }

  const Representation& representation() const { return rep_; }
  const ScaleFunction& link() const { return link_; }
  const Interval& stimulus() const { return stimulus_; }

 private:
  Representation rep_;
  ScaleFunction link_;
  Interval stimulus_;
};

/// Validates F (strictly increasing, range inside ]0, 1[, LinkRangeError or
/// NonMonotoneError otherwise) and that p_a is strictly increasing on sampled
/// backgrounds when the stimulus interval is bounded.
PsychometricFamily make_psychometric(const Representation& rep, const ScaleFunction& link,
                                     Interval stimulus);

/// x in I with p_a(x) = pi, found by bisection to 1e-10. RangeError when pi
/// is not attained on I.
double sensitivity_from_psychometric(const PsychometricFamily& pf, double a, double pi);

struct FamilyProperties {
  ResidualReport anchored, parallel, balanced;
};

/// Backgrounds are the grid's x samples and probability levels its s
/// samples. Anchored uses the level 1/2: every sampled background must reach
/// it, and every sampled x must be the 1/2-point of some background in the
/// sampled background hull.
FamilyProperties check_family_properties(const PsychometricFamily& pf, const Grid& grid,
                                         double tol);

struct BalancedDecomposition {
  ScaleFunction nu;
  ResidualReport report;  // components "x_independence" and "antisymmetry"
};

/// nu(s) = mean over x of xi_s(x) - x. Throws GridSymmetryError unless 1 - s
/// is sampled for every sampled s.
BalancedDecomposition decompose_balanced_parallel(const SensitivityFamily& xi, const Grid& grid,
                                                  double tol);

}  // namespace simlaw
