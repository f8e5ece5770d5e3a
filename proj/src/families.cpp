#include "simlaw/families.hpp"

#include <cmath>
#include <cstdio>
#include <set>

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

void require(bool ok, const std::string& kind, const std::string& constraint) {
  if (!ok) throw ParamError(kind + ": constraint violated: " + constraint);
}

void validate(const SensitivityFamily::Variant& v) {
  std::visit(Overloaded{
                 [](const SensitivityFamily::AffineA& p) {
                   require(p.c != 0.0, "affineA", "c != 0");
                   require(p.mu != 0.0, "affineA", "mu != 0");
                 },
                 [](const SensitivityFamily::AffineB& p) {
                   require(p.c != 0.0, "affineB", "c != 0");
                 },
                 [](const SensitivityFamily::ParallelLog& p) {
                   require(p.alpha != 0.0, "parallelLog", "alpha != 0");
                 },
                 [](const SensitivityFamily::ParallelPower& p) {
                   require(p.alpha != 0.0, "parallelPower", "alpha != 0");
                   require(p.rho != 0.0, "parallelPower", "rho != 0");
                 },
                 [](const SensitivityFamily::SubCaseII& p) {
                   require(p.rho != 0.0, "subCaseII", "rho != 0");
                 },
                 [](const SensitivityFamily::ShiftForm& p) {
                   require(p.theta > 0.0, "shiftForm", "theta > 0");
                 },
                 [](const SensitivityFamily::PowerF& p) {
                   require(p.H.invertible(), "powerF", "H invertible");
                 },
                 [](const auto&) {},
             },
             v);
}

class ParamReader {
 public:
  ParamReader(std::string kind, const ParamMap& params) : kind_(std::move(kind)), params_(params) {}

  double real(const std::string& name) {
    const ParamValue& v = find(name);
    if (const double* d = std::get_if<double>(&v)) return *d;
    throw ParamError(kind_ + ": parameter '" + name + "' must be a real number");
  }
  ScaleFunction scale(const std::string& name) {
    const ParamValue& v = find(name);
    if (const double* d = std::get_if<double>(&v)) return ScaleFunction::constant(*d);
    return std::get<ScaleFunction>(v);
  }
  void finish() const {
    for (const auto& [name, value] : params_) {
      if (!used_.count(name)) {
        throw ParamError(kind_ + ": unknown parameter '" + name + "'");
      }
    }
  }

 private:
  const ParamValue& find(const std::string& name) {
    auto it = params_.find(name);
    if (it == params_.end()) throw ParamError(kind_ + ": missing parameter '" + name + "'");
    used_.insert(name);
    return it->second;
  }

  std::string kind_;
  const ParamMap& params_;
  std::set<std::string> used_;
};

}  // namespace

SensitivityFamily::SensitivityFamily(Variant v) : variant_(std::move(v)) { validate(variant_); }

SensitivityFamily SensitivityFamily::with_domain(Interval x_domain, Interval s_domain) const {
  SensitivityFamily out = *this;
  out.x_domain_ = x_domain;
  out.s_domain_ = s_domain;
  if (x_domain.bounded() && s_domain.bounded()) {
    auto inner = [](const Interval& iv) {
      auto pts = linspace(iv.lo, iv.hi, 9);
      if (iv.lo_open) pts.front() = iv.lo + 1e-9 * iv.width();
      if (iv.hi_open) pts.back() = iv.hi - 1e-9 * iv.width();
      return pts;
    };
    for (double x : inner(x_domain)) {
      for (double s : inner(s_domain)) {
        try {
          out.eval(x, s);
        } catch (const DomainError& e) {
          throw ParamError(describe() + " is not finite on the declared rectangle: " + e.what());
        }
      }
    }
  }
  return out;
}

double SensitivityFamily::eval(double x, double s) const {
  if (!x_domain_.contains(x) || !s_domain_.contains(s)) {
    throw DomainError(kind() + ": (x=" + fmt(x) + ", s=" + fmt(s) + ") outside " +
                      x_domain_.to_string() + " x " + s_domain_.to_string());
  }
  const double v = std::visit(
      Overloaded{
          [&](const Weber& f) { return f.k.eval(s) * x; },
          [&](const Power& f) { return f.kappa.eval(s) * std::pow(x, f.rho.eval(s)); },
          [&](const PhiForm& f) { return f.Phi.eval(f.f.eval(s) * x) / f.g.eval(s); },
          [&](const AffineA& f) { return std::pow((s + f.d) / f.c, 1.0 / f.mu) * x; },
          [&](const AffineB& f) { return std::exp((s - f.d) / f.c) * x; },
          [&](const AffineC&) { return x; },
          [&](const ParallelLog& f) {
            return f.alpha * std::log(f.f.eval(s) * x) + f.beta + f.gamma;
          },
          [&](const ParallelPower& f) {
            return f.alpha * std::pow(x, f.rho) + f.gamma / std::pow(f.f.eval(s), f.rho);
          },
          [&](const BalancedParallel& f) { return x + f.nu.eval(s); },
          [&](const SubCaseI& f) {
            return f.a * std::exp(f.b * f.rho * s) * std::pow(x, f.r + f.rho);
          },
          [&](const SubCaseII& f) {
            return f.a * std::pow(f.c * std::pow(x, f.r / f.rho) + s - f.eps, f.rho);
          },
          [&](const FechExp& f) { return std::exp(f.rho * s) * x; },
          [&](const PowerF& f) {
            return std::pow(x, f.phi.eval(s)) * f.F.eval(x * f.H.invert(s));
          },
          [&](const ShiftForm& f) {
            const double t = std::pow(s, 1.0 / f.theta);
            const double denom = f.f.eval(t);
            if (denom == 0.0) throw DomainError("shiftForm: f(s^{1/theta}) = 0 at s = " + fmt(s));
            return f.f.eval(x * t) / denom * f.F.eval(std::pow(x, f.theta) * s);
          },
          [&](const Homogeneous& f) {
            if (s == 0.0) return f.c * x;
            return s * f.phi.eval(x / s);
          },
          [&](const Tabulated& f) { return f.table.eval(x, s); },
      },
      variant_);
  if (!std::isfinite(v)) {
    throw DomainError(kind() + ": value not finite at (x=" + fmt(x) + ", s=" + fmt(s) + ")");
  }
  return v;
}

std::string SensitivityFamily::kind() const {
  static const char* const names[] = {
      "weber",      "power",       "phiForm",   "affineA",   "affineB",  "affineC",
      "parallelLog", "parallelPower", "balancedParallel", "subCaseI", "subCaseII", "fechExp",
      "powerF",     "shiftForm",   "homogeneous", "tabulated"};
  return names[variant_.index()];
}

NamedValues SensitivityFamily::params() const {
  return std::visit(
      Overloaded{
          [](const AffineA& f) { return NamedValues{{"c", f.c}, {"mu", f.mu}, {"d", f.d}}; },
          [](const AffineB& f) { return NamedValues{{"c", f.c}, {"d", f.d}}; },
          [](const ParallelLog& f) {
            return NamedValues{{"alpha", f.alpha}, {"beta", f.beta}, {"gamma_c", f.gamma}};
          },
          [](const ParallelPower& f) {
            return NamedValues{{"alpha", f.alpha}, {"rho", f.rho}, {"gamma_c", f.gamma}};
          },
          [](const SubCaseI& f) {
            return NamedValues{{"a", f.a}, {"b", f.b}, {"rho", f.rho}, {"r", f.r}};
          },
          [](const SubCaseII& f) {
            return NamedValues{
                {"a", f.a}, {"c", f.c}, {"rho", f.rho}, {"r", f.r}, {"eps", f.eps}};
          },
          [](const FechExp& f) { return NamedValues{{"rho", f.rho}}; },
          [](const ShiftForm& f) { return NamedValues{{"theta", f.theta}}; },
          [](const Homogeneous& f) { return NamedValues{{"c", f.c}}; },
          [](const auto&) { return NamedValues{}; },
      },
      variant_);
}

std::string SensitivityFamily::describe() const {
  std::string out = kind() + "(";
  bool first = true;
  auto add = [&](const std::string& text) {
    if (!first) out += ", ";
    out += text;
    first = false;
  };
  for (const auto& [name, value] : params()) add(name + "=" + fmt(value));
  std::visit(Overloaded{
                 [&](const Weber& f) { add("k=" + f.k.describe()); },
                 [&](const Power& f) {
                   add("kappa=" + f.kappa.describe());
                   add("rho=" + f.rho.describe());
                 },
                 [&](const PhiForm& f) {
                   add("Phi=" + f.Phi.describe());
                   add("f=" + f.f.describe());
                   add("g=" + f.g.describe());
                 },
                 [&](const ParallelLog& f) { add("f=" + f.f.describe()); },
                 [&](const ParallelPower& f) { add("f=" + f.f.describe()); },
                 [&](const BalancedParallel& f) { add("nu=" + f.nu.describe()); },
                 [&](const PowerF& f) {
                   add("phi=" + f.phi.describe());
                   add("F=" + f.F.describe());
                   add("H=" + f.H.describe());
                 },
                 [&](const ShiftForm& f) {
                   add("f=" + f.f.describe());
                   add("F=" + f.F.describe());
                 },
                 [&](const Homogeneous& f) { add("phi=" + f.phi.describe()); },
                 [&](const Tabulated& f) {
                   add(std::to_string(f.table.a_axis().size()) + "x" +
                       std::to_string(f.table.b_axis().size()) + " nodes");
                 },
                 [](const auto&) {},
             },
             variant_);
  return out + ")";
}

const std::vector<std::string>& family_kinds() {
  static const std::vector<std::string> kinds = {
      "weber",   "power",     "phiForm",  "affineA",  "affineB",          "affineC",
      "parallelLog", "parallelPower", "balancedParallel", "subCaseI", "subCaseII",
      "fechExp", "powerF",    "shiftForm", "homogeneous", "rem3"};
  return kinds;
}

SensitivityFamily make_family(const std::string& kind, const ParamMap& params) {
  using F = SensitivityFamily;
  ParamReader p(kind, params);
  auto build = [&]() -> F::Variant {
    if (kind == "weber") return F::Weber{p.scale("k")};
    if (kind == "power") return F::Power{p.scale("kappa"), p.scale("rho")};
    if (kind == "phiForm") return F::PhiForm{p.scale("Phi"), p.scale("f"), p.scale("g")};
    if (kind == "affineA") return F::AffineA{p.real("c"), p.real("mu"), p.real("d")};
    if (kind == "affineB") return F::AffineB{p.real("c"), p.real("d")};
    if (kind == "affineC") return F::AffineC{};
    if (kind == "parallelLog") {
      return F::ParallelLog{p.real("alpha"), p.real("beta"), p.real("gamma_c"), p.scale("f")};
    }
    if (kind == "parallelPower") {
      return F::ParallelPower{p.real("alpha"), p.real("rho"), p.real("gamma_c"), p.scale("f")};
    }
    if (kind == "balancedParallel") return F::BalancedParallel{p.scale("nu")};
    if (kind == "subCaseI") return F::SubCaseI{p.real("a"), p.real("b"), p.real("rho"), p.real("r")};
    if (kind == "subCaseII") {
      return F::SubCaseII{p.real("a"), p.real("c"), p.real("rho"), p.real("r"), p.real("eps")};
    }
    if (kind == "rem3") return F::SubCaseII{1.0, 1.0, 1.0, 1.0, 0.0};
    if (kind == "fechExp") return F::FechExp{p.real("rho")};
    if (kind == "powerF") return F::PowerF{p.scale("phi"), p.scale("F"), p.scale("H")};
    if (kind == "shiftForm") return F::ShiftForm{p.scale("f"), p.scale("F"), p.real("theta")};
    if (kind == "homogeneous") return F::Homogeneous{p.scale("phi"), p.real("c")};
    throw ParamError("unknown family kind '" + kind + "'");
  };
  F::Variant v = build();
  p.finish();
  return F(std::move(v));
}

std::optional<std::pair<GammaMap, EtaMap>> canonical_companions(const SensitivityFamily& family) {
  using F = SensitivityFamily;
  using Pair = std::pair<GammaMap, EtaMap>;
  const auto weber_pair = [] { return Pair{GammaMap::lambda_only(), EtaMap::identity_in_s()}; };
  return std::visit(
      Overloaded{
          [&](const F::Weber&) -> std::optional<Pair> { return weber_pair(); },
          [&](const F::AffineA&) -> std::optional<Pair> { return weber_pair(); },
          [&](const F::AffineB&) -> std::optional<Pair> { return weber_pair(); },
          [&](const F::AffineC&) -> std::optional<Pair> { return weber_pair(); },
          [&](const F::FechExp&) -> std::optional<Pair> { return weber_pair(); },
          [](const F::Power& f) -> std::optional<Pair> {
            return Pair{GammaMap::power_phi(f.rho), EtaMap::identity_in_s()};
          },
          [](const F::PhiForm& f) -> std::optional<Pair> {
            // f(eta) = lambda f(s) and gamma = g(eta) / g(s).
            if (!f.f.invertible()) return std::nullopt;
            const ScaleFunction f_inv = ScaleFunction::inverse_of(f.f);
            return Pair{GammaMap::ratio_form(ScaleFunction::compose(f.g, f_inv), f.f),
                        EtaMap::conjugate(f_inv)};
          },
          [](const F::ParallelPower& f) -> std::optional<Pair> {
            if (!f.f.invertible()) return std::nullopt;
            return Pair{GammaMap::power_of_lambda(f.rho),
                        EtaMap::conjugate(ScaleFunction::inverse_of(f.f))};
          },
          [](const F::SubCaseI& f) -> std::optional<Pair> {
            if (f.b == 0.0 || f.rho == 0.0) {
              return Pair{GammaMap::power_of_lambda(f.r + f.rho), EtaMap::identity_in_s()};
            }
            return Pair{GammaMap::power_of_lambda(f.r), EtaMap::additive_log(1.0, f.b)};
          },
          [](const F::SubCaseII& f) -> std::optional<Pair> {
            return Pair{GammaMap::power_of_lambda(f.r), EtaMap::affine_shift(f.r / f.rho, f.eps)};
          },
          [](const F::PowerF& f) -> std::optional<Pair> {
            return Pair{GammaMap::power_phi(f.phi), EtaMap::conjugate(f.H)};
          },
          [](const F::ShiftForm& f) -> std::optional<Pair> {
            return Pair{GammaMap::ratio_form(f.f, ScaleFunction::power(1.0, 1.0 / f.theta, 0.0)),
                        EtaMap::power_scale(f.theta)};
          },
          [](const F::Homogeneous&) -> std::optional<Pair> {
            return Pair{GammaMap::lambda_only(), EtaMap::power_scale(-1.0)};
          },
          [](const auto&) -> std::optional<Pair> { return std::nullopt; },
      },
      family.variant());
}

}  // namespace simlaw
