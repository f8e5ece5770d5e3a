#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "simlaw/interval.hpp"
#include "simlaw/scale.hpp"
#include "simlaw/table2d.hpp"

namespace simlaw {

using NamedValues = std::vector<std::pair<std::string, double>>;

/// Two-variable map eta(lambda, s) giving the transformed discriminability
/// in the similarity law.
class EtaMap {
 public:
  struct PowerScale {
    double theta;  // eta = lambda^theta * s
  };
  struct Conjugate {
    ScaleFunction H;  // eta = H(lambda * H^{-1}(s))
  };
  struct IdentityInS {};
  struct ConstantPerS {
    ScaleFunction nu;  // eta = nu(s)
  };
  struct AffineShift {
    double delta, eps;  // eta = lambda^{-delta} (s - eps) + eps
  };
  struct LogBlend {
    double kappa, beta, delta;  // eta = -(1/kappa) ln(lambda^{-delta}(e^{-kappa s} - beta) + beta)
  };
  struct AdditiveLog {
    double delta, kappa;  // eta = s + (delta/kappa) ln(lambda)
  };
  struct Tabulated {
    Table2D table;  // axes (lambda, s)
  };
  using Variant = std::variant<PowerScale, Conjugate, IdentityInS, ConstantPerS, AffineShift,
                               LogBlend, AdditiveLog, Tabulated>;

  static EtaMap power_scale(double theta);
  static EtaMap conjugate(ScaleFunction H);
  static EtaMap identity_in_s();
  static EtaMap constant_per_s(ScaleFunction nu);
  static EtaMap affine_shift(double delta, double eps);
  static EtaMap log_blend(double kappa, double beta, double delta);
  static EtaMap additive_log(double delta, double kappa);
  static EtaMap tabulated(Table2D table);

  /// Restricts the map to J x S. With bounded J and S the map is sampled on
  /// a 16x16 lattice and must land in S (ParamError otherwise).
  EtaMap with_domain(Interval lambda_domain, Interval s_domain) const;

  /// Throws DomainError outside the map's rectangle or when the formula is
  /// not finite.
  double eval(double lambda, double s) const;
  double operator()(double lambda, double s) const { return eval(lambda, s); }

  const Variant& variant() const { return variant_; }
  std::string kind() const;
  NamedValues params() const;
  std::string describe() const;
  const Interval& lambda_domain() const { return lambda_domain_; }
  const Interval& s_domain() const { return s_domain_; }

 private:
  explicit EtaMap(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
  Interval lambda_domain_ = Interval::real_line();
  Interval s_domain_ = Interval::real_line();
};

/// Two-variable multiplier gamma(lambda, s) of the similarity law.
class GammaMap {
 public:
  struct PowerOfLambda {
    double r;  // gamma = lambda^r
  };
  struct PowerPhi {
    ScaleFunction phi;  // gamma = lambda^{phi(s)}
  };
  struct LambdaOnly {};
  struct RatioForm {
    ScaleFunction kappa, h;  // gamma = kappa(h(s) lambda) / kappa(h(s))
  };
  struct Tabulated {
    Table2D table;  // axes (lambda, s)
  };
  using Variant = std::variant<PowerOfLambda, PowerPhi, LambdaOnly, RatioForm, Tabulated>;

  static GammaMap power_of_lambda(double r);
  static GammaMap power_phi(ScaleFunction phi);
  static GammaMap lambda_only();
  static GammaMap ratio_form(ScaleFunction kappa, ScaleFunction h);
  static GammaMap tabulated(Table2D table);

  /// Throws DivisionError where a ratioForm denominator vanishes and
  /// DomainError where the value is not finite.
  double eval(double lambda, double s) const;
  double operator()(double lambda, double s) const { return eval(lambda, s); }

  const Variant& variant() const { return variant_; }
  std::string kind() const;
  NamedValues params() const;
  std::string describe() const;

 private:
  explicit GammaMap(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

}  // namespace simlaw
