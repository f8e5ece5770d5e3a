#include "simlaw/maps.hpp"

#include <cmath>
#include <cstdio>

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

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string describe_values(const std::string& kind, const NamedValues& values) {
  std::string out = kind + "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += values[i].first + "=" + fmt(values[i].second);
  }
  return out + ")";
}

}  // namespace

EtaMap EtaMap::power_scale(double theta) {
  if (!std::isfinite(theta)) throw ParamError("powerScale: theta must be finite");
  return EtaMap(PowerScale{theta});
}

EtaMap EtaMap::conjugate(ScaleFunction H) {
  if (!H.invertible()) throw ParamError("conjugate: H must be invertible, got " + H.describe());
  return EtaMap(Conjugate{std::move(H)});
}

EtaMap EtaMap::identity_in_s() { return EtaMap(IdentityInS{}); }

EtaMap EtaMap::constant_per_s(ScaleFunction nu) { return EtaMap(ConstantPerS{std::move(nu)}); }

EtaMap EtaMap::affine_shift(double delta, double eps) { return EtaMap(AffineShift{delta, eps}); }

EtaMap EtaMap::log_blend(double kappa, double beta, double delta) {
  if (kappa == 0.0) throw ParamError("logBlend: kappa must be nonzero");
  return EtaMap(LogBlend{kappa, beta, delta});
}

EtaMap EtaMap::additive_log(double delta, double kappa) {
  if (kappa == 0.0) throw ParamError("additiveLog: kappa must be nonzero");
  return EtaMap(AdditiveLog{delta, kappa});
}

EtaMap EtaMap::tabulated(Table2D table) { return EtaMap(Tabulated{std::move(table)}); }

EtaMap EtaMap::with_domain(Interval lambda_domain, Interval s_domain) const {
  EtaMap out = *this;
  out.lambda_domain_ = lambda_domain;
  out.s_domain_ = s_domain;
  if (lambda_domain.bounded() && s_domain.bounded()) {
    const auto inner = [](const Interval& iv, std::size_t n) {
      auto pts = linspace(iv.lo, iv.hi, n);
      if (iv.lo_open) pts.front() = iv.lo + 1e-9 * (iv.hi - iv.lo);
      if (iv.hi_open) pts.back() = iv.hi - 1e-9 * (iv.hi - iv.lo);
      return pts;
    };
    for (double lam : inner(lambda_domain, 16)) {
      for (double s : inner(s_domain, 16)) {
        const double v = out.eval(lam, s);
        if (!s_domain.contains(v)) {
          throw ParamError(describe() + " maps (" + fmt(lam) + ", " + fmt(s) + ") to " +
                           fmt(v) + ", outside S = " + s_domain.to_string());
        }
      }
    }
  }
  return out;
}

double EtaMap::eval(double lambda, double s) const {
  if (!lambda_domain_.contains(lambda) || !s_domain_.contains(s)) {
    throw DomainError(describe() + ": (" + fmt(lambda) + ", " + fmt(s) +
                      ") outside its rectangle");
  }
  const double v = std::visit(
      Overloaded{
          [&](const PowerScale& m) { return std::pow(lambda, m.theta) * s; },
          [&](const Conjugate& m) {
            // Exact at the identity element.
            if (lambda == 1.0) return s;
            return m.H.eval(lambda * m.H.invert(s));
          },
          [&](const IdentityInS&) { return s; },
          [&](const ConstantPerS& m) { return m.nu.eval(s); },
          [&](const AffineShift& m) { return std::pow(lambda, -m.delta) * (s - m.eps) + m.eps; },
          [&](const LogBlend& m) {
            return -std::log(std::pow(lambda, -m.delta) * (std::exp(-m.kappa * s) - m.beta) +
                             m.beta) /
                   m.kappa;
          },
          [&](const AdditiveLog& m) { return s + (m.delta / m.kappa) * std::log(lambda); },
          [&](const Tabulated& m) { return m.table.eval(lambda, s); },
      },
      variant_);
  if (!std::isfinite(v)) {
    throw DomainError(describe() + ": not finite at (" + fmt(lambda) + ", " + fmt(s) + ")");
  }
  return v;
}

std::string EtaMap::kind() const {
  return std::visit(Overloaded{
                        [](const PowerScale&) { return std::string("powerScale"); },
                        [](const Conjugate&) { return std::string("conjugate"); },
                        [](const IdentityInS&) { return std::string("identityInS"); },
                        [](const ConstantPerS&) { return std::string("constantPerS"); },
                        [](const AffineShift&) { return std::string("affineShift"); },
                        [](const LogBlend&) { return std::string("logBlend"); },
                        [](const AdditiveLog&) { return std::string("additiveLog"); },
                        [](const Tabulated&) { return std::string("tabulated"); },
                    },
                    variant_);
}

NamedValues EtaMap::params() const {
  return std::visit(Overloaded{
                        [](const PowerScale& m) { return NamedValues{{"theta", m.theta}}; },
                        [](const AffineShift& m) {
                          return NamedValues{{"delta", m.delta}, {"eps", m.eps}};
                        },
                        [](const LogBlend& m) {
                          return NamedValues{
                              {"kappa", m.kappa}, {"beta", m.beta}, {"delta", m.delta}};
                        },
                        [](const AdditiveLog& m) {
                          return NamedValues{{"delta", m.delta}, {"kappa", m.kappa}};
                        },
                        [](const auto&) { return NamedValues{}; },
                    },
                    variant_);
}

std::string EtaMap::describe() const {
  return std::visit(
      Overloaded{
          [](const Conjugate& m) { return "conjugate(H=" + m.H.describe() + ")"; },
          [](const ConstantPerS& m) { return "constantPerS(nu=" + m.nu.describe() + ")"; },
          [this](const auto&) { return describe_values(kind(), params()); },
      },
      variant_);
}

GammaMap GammaMap::power_of_lambda(double r) { return GammaMap(PowerOfLambda{r}); }

GammaMap GammaMap::power_phi(ScaleFunction phi) { return GammaMap(PowerPhi{std::move(phi)}); }

GammaMap GammaMap::lambda_only() { return GammaMap(LambdaOnly{}); }

GammaMap GammaMap::ratio_form(ScaleFunction kappa, ScaleFunction h) {
  return GammaMap(RatioForm{std::move(kappa), std::move(h)});
}

GammaMap GammaMap::tabulated(Table2D table) { return GammaMap(Tabulated{std::move(table)}); }

double GammaMap::eval(double lambda, double s) const {
  const double v = std::visit(
      Overloaded{
          [&](const PowerOfLambda& g) { return std::pow(lambda, g.r); },
          [&](const PowerPhi& g) { return std::pow(lambda, g.phi.eval(s)); },
          [&](const LambdaOnly&) { return lambda; },
          [&](const RatioForm& g) {
            const double hs = g.h.eval(s);
            const double denom = g.kappa.eval(hs);
            if (denom == 0.0) {
              throw DivisionError("ratioForm gamma: kappa(h(s)) = 0 at s = " + fmt(s));
            }
            return g.kappa.eval(hs * lambda) / denom;
          },
          [&](const Tabulated& g) { return g.table.eval(lambda, s); },
      },
      variant_);
  if (!std::isfinite(v)) {
    throw DomainError(describe() + ": not finite at (" + fmt(lambda) + ", " + fmt(s) + ")");
  }
  return v;
}

std::string GammaMap::kind() const {
  return std::visit(Overloaded{
                        [](const PowerOfLambda&) { return std::string("powerOfLambda"); },
                        [](const PowerPhi&) { return std::string("powerPhi"); },
                        [](const LambdaOnly&) { return std::string("lambdaOnly"); },
                        [](const RatioForm&) { return std::string("ratioForm"); },
                        [](const Tabulated&) { return std::string("tabulated"); },
                    },
                    variant_);
}

NamedValues GammaMap::params() const {
  if (const auto* g = std::get_if<PowerOfLambda>(&variant_)) return {{"r", g->r}};
  return {};
}

std::string GammaMap::describe() const {
  return std::visit(
      Overloaded{
          [](const PowerPhi& g) { return "powerPhi(phi=" + g.phi.describe() + ")"; },
          [](const RatioForm& g) {
            return "ratioForm(kappa=" + g.kappa.describe() + ", h=" + g.h.describe() + ")";
          },
          [this](const auto&) { return describe_values(kind(), params()); },
      },
      variant_);
}

}  // namespace simlaw
