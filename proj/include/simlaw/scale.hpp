#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "simlaw/interval.hpp"

namespace simlaw {

/// A one-dimensional real function on a closed or half-open interval.
///
/// Every scale symbol of the theory (u, w, sigma, v, H, F, Phi, f, g, kappa,
/// h, phi, nu) is a ScaleFunction. The parametric variants and the table
/// variant are strictly monotone and invertible; `constant` and `custom`
/// cover the coefficient functions (kappa(s) = 2, rho(s) = 1.5, ...) and
/// composites that the constructive results build from other functions.
///
/// Values are immutable after construction and safe to share between
/// threads.
class ScaleFunction {
 public:
  struct Affine {
    double a, b;
  };
  struct Log {
    double a, b;
  };
  struct Power {
    double a, p, b;
  };
  struct Exp {
    double a, k, b;
  };
  /// Piecewise-linear interpolant through strictly increasing x knots.
  struct Table {
    std::vector<double> x, y;
  };
  struct Constant {
    double c;
  };
  struct Custom {
    std::string name;
    std::function<double(double)> fn;
    std::function<double(double)> inverse;  // may be empty
  };
  using Variant = std::variant<Affine, Log, Power, Exp, Table, Constant, Custom>;

  /// x -> a*x + b.
  static ScaleFunction affine(double a, double b,
                              Interval domain = Interval::real_line());
  static ScaleFunction identity(Interval domain = Interval::real_line()) {
    return affine(1.0, 0.0, domain);
  }
  /// x -> a*ln(x) + b; the domain must lie inside (0, inf).
  static ScaleFunction log(double a, double b, Interval domain = Interval::positive());
  /// x -> a*x^p + b. The default domain is [0, inf) for p > 0 and (0, inf)
  /// for p < 0; odd integer exponents may also be given a signed domain.
  static ScaleFunction power(double a, double p, double b);
  static ScaleFunction power(double a, double p, double b, Interval domain);
  /// x -> a*exp(k*x) + b.
  static ScaleFunction exp(double a, double k, double b,
                           Interval domain = Interval::real_line());
  static ScaleFunction table(std::vector<double> x, std::vector<double> y);
  static ScaleFunction table(const std::vector<std::pair<double, double>>& knots);
  static ScaleFunction constant(double c, Interval domain = Interval::real_line());
  /// Wraps an arbitrary callable. `monotonicity` is +1/-1 when the caller
  /// knows the function is strictly increasing/decreasing, 0 otherwise. An
  /// empty `inverse` falls back to bisection on bounded monotone domains.
  static ScaleFunction custom(std::string name, std::function<double(double)> fn,
                              Interval domain = Interval::real_line(),
                              int monotonicity = 0,
                              std::function<double(double)> inverse = {});

  /// Logistic link 1/(1+e^{-t}) tabulated on [-half_width, half_width] with
  /// knots symmetric about zero, so F(-t) = 1 - F(t) holds to rounding.
  static ScaleFunction logistic_table(double half_width = 30.0,
                                      std::size_t knots_per_unit = 100);
  /// Table when `y` is strictly monotone, otherwise a non-invertible
  /// piecewise-linear custom function through the same knots.
  static ScaleFunction interpolant(std::vector<double> x, std::vector<double> y);
  /// The inverse function of an invertible scale.
  static ScaleFunction inverse_of(const ScaleFunction& f);
  /// outer(inner(x)).
  static ScaleFunction compose(const ScaleFunction& outer, const ScaleFunction& inner);

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }
  double invert(double y) const;

  const Interval& domain() const { return domain_; }
  Interval range() const;
  /// +1 strictly increasing, -1 strictly decreasing, 0 constant or unknown.
  int monotonicity() const { return monotonicity_; }
  bool invertible() const;
  const Variant& variant() const { return *variant_; }
  std::string kind() const;
  std::string describe() const;

 private:
  ScaleFunction(Variant v, Interval domain, int monotonicity);

  double eval_unchecked(double x) const;

  std::shared_ptr<const Variant> variant_;
  Interval domain_;
  int monotonicity_ = 0;
};

}  // namespace simlaw
