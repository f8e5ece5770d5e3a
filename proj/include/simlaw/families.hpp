#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "simlaw/interval.hpp"
#include "simlaw/maps.hpp"
#include "simlaw/scale.hpp"
#include "simlaw/table2d.hpp"

namespace simlaw {

using ParamValue = std::variant<double, ScaleFunction>;
using ParamMap = std::map<std::string, ParamValue>;

/// A one-parameter family of sensitivity functions xi_s(x).
///
/// Each variant is one of the closed forms produced by the constructive
/// results (Weber, power law, Phi-form, the three gain-control alternatives,
/// the parallel forms, the two subtractive cases, the Fechnerian exponential,
/// the power-law and shift-invariance forms, the s/lambda homogeneous form)
/// or a tabulated family.
class SensitivityFamily {
 public:
  struct Weber {
    ScaleFunction k;
  };
  struct Power {
    ScaleFunction kappa, rho;
  };
  struct PhiForm {
    ScaleFunction Phi, f, g;
  };
  struct AffineA {
    double c, mu, d;
  };
  struct AffineB {
    double c, d;
  };
  struct AffineC {};
  struct ParallelLog {
    double alpha, beta, gamma;
    ScaleFunction f;
  };
  struct ParallelPower {
    double alpha, rho, gamma;
    ScaleFunction f;
  };
  struct BalancedParallel {
    ScaleFunction nu;
  };
  struct SubCaseI {
    double a, b, rho, r;
  };
  struct SubCaseII {
    double a, c, rho, r, eps;
  };
  struct FechExp {
    double rho;
  };
  struct PowerF {
    ScaleFunction phi, F, H;
  };
  struct ShiftForm {
    ScaleFunction f, F;
    double theta;
  };
  struct Homogeneous {
    ScaleFunction phi;
    double c;
  };
  struct Tabulated {
    Table2D table;  // axes (x, s)
  };
  using Variant = std::variant<Weber, Power, PhiForm, AffineA, AffineB, AffineC, ParallelLog,
                               ParallelPower, BalancedParallel, SubCaseI, SubCaseII, FechExp,
                               PowerF, ShiftForm, Homogeneous, Tabulated>;

  /// Validates the variant's parameter constraints (ParamError otherwise).
  explicit SensitivityFamily(Variant v);

  /// Restricts the family to the rectangle I x S. When both are bounded the
  /// family must be finite on a 9x9 sample lattice of the rectangle.
  SensitivityFamily with_domain(Interval x_domain, Interval s_domain) const;

  /// xi_s(x). Throws DomainError outside the rectangle or where the closed
  /// form is not a finite real.
  double eval(double x, double s) const;
  double operator()(double x, double s) const { return eval(x, s); }

  const Variant& variant() const { return variant_; }
  std::string kind() const;
  /// Real-valued parameters in declaration order.
  NamedValues params() const;
  std::string describe() const;
  const Interval& x_domain() const { return x_domain_; }
  const Interval& s_domain() const { return s_domain_; }

 private:
  Variant variant_;
  Interval x_domain_ = Interval::real_line();
  Interval s_domain_ = Interval::real_line();
};

/// Builds a family from a kind name and named parameters. Scale-valued
/// parameters accept a plain number, meaning the constant function. The
/// kind "rem3" is shorthand for x + s, i.e. subCaseII(1, 1, 1, 1, 0).
SensitivityFamily make_family(const std::string& kind, const ParamMap& params);

/// Names accepted by make_family.
const std::vector<std::string>& family_kinds();

/// xi_s(x) for the family.
inline double eval_xi(const SensitivityFamily& family, double x, double s) {
  return family.eval(x, s);
}

/// The (gamma, eta) pair under which the family satisfies the similarity
/// law identically, or nullopt when none is known.
std::optional<std::pair<GammaMap, EtaMap>> canonical_companions(const SensitivityFamily& family);

}  // namespace simlaw
