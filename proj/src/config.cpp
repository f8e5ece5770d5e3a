#include "simlaw/config.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <set>

#include "simlaw/csv.hpp"
#include "simlaw/errors.hpp"

namespace simlaw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Object reader that rejects unknown keys.
class Fields {
 public:
  Fields(const Json& spec, std::string where) : spec_(spec), where_(std::move(where)) {
    if (!spec.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) const { return spec_.contains(key); }
  const Json& get(const std::string& key) {
    if (!spec_.contains(key)) throw ConfigError(where_ + ": missing '" + key + "'");
    used_.insert(key);
    return spec_.at(key);
  }
  double real(const std::string& key) {
    const Json& v = get(key);
    if (!v.is_number()) throw ConfigError(where_ + ": '" + key + "' must be a number");
    return v.get<double>();
  }
  double real_or(const std::string& key, double fallback) {
    return has(key) ? real(key) : fallback;
  }
  std::string text(const std::string& key) {
    const Json& v = get(key);
    if (!v.is_string()) throw ConfigError(where_ + ": '" + key + "' must be a string");
    return v.get<std::string>();
  }
  void finish() const {
    for (const auto& [key, value] : spec_.items()) {
      if (!used_.count(key)) throw ConfigError(where_ + ": unknown key '" + key + "'");
    }
  }
  const std::string& where() const { return where_; }

 private:
  const Json& spec_;
  std::string where_;
  std::set<std::string> used_;
};

std::string resolve(const std::string& path, const std::string& base_dir) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

std::vector<double> numbers(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(where + ": expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

template <class Fn>
auto wrap(const std::string& where, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

Axis parse_axis(const Json* spec, const std::string& name, Axis fallback,
                std::optional<std::size_t> count) {
  if (!spec) {
    if (count) {
      fallback = Axis::uniform(fallback.samples.front(), fallback.samples.back(), *count,
                               fallback.domain);
    }
    return fallback;
  }
  Fields f(*spec, "grid." + name);
  const Interval domain_default = fallback.domain;
  Axis out;
  if (f.has("samples")) {
    out.samples = numbers(f.get("samples"), f.where());
    if (count) throw ConfigError(f.where() + ": --grid cannot resample an explicit sample list");
    out.domain = f.has("domain") ? parse_interval(f.get("domain"))
                                 : Interval::closed(out.samples.front(), out.samples.back());
  } else {
    const double lo = f.real("lo"), hi = f.real("hi");
    const double n = count ? static_cast<double>(*count) : f.real_or("n", 32.0);
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw ConfigError(f.where() + ": bounds must be finite with lo < hi");
    }
    if (!(n >= 4.0) || n != std::floor(n)) {
      throw ConfigError(f.where() + ": sample count must be an integer >= 4");
    }
    if (count && f.has("n")) f.get("n");
    const Interval domain = f.has("domain") ? parse_interval(f.get("domain")) : domain_default;
    out = Axis::uniform(lo, hi, static_cast<std::size_t>(n), domain);
  }
  f.finish();
  return out;
}

}  // namespace

Interval parse_interval(const Json& spec) {
  const auto end = [](const Json& v, double infinite) {
    if (v.is_null()) return infinite;
    if (!v.is_number()) throw ConfigError("interval ends must be numbers or null");
    return v.get<double>();
  };
  Interval out;
  if (spec.is_array()) {
    if (spec.size() != 2) throw ConfigError("interval must be [lo, hi]");
    out.lo = end(spec[0], -kInf);
    out.hi = end(spec[1], kInf);
    out.lo_open = !std::isfinite(out.lo);
    out.hi_open = !std::isfinite(out.hi);
  } else {
    Fields f(spec, "interval");
    out.lo = f.has("lo") ? end(f.get("lo"), -kInf) : -kInf;
    out.hi = f.has("hi") ? end(f.get("hi"), kInf) : kInf;
    out.lo_open = f.has("lo_open") ? f.get("lo_open").get<bool>() : !std::isfinite(out.lo);
    out.hi_open = f.has("hi_open") ? f.get("hi_open").get<bool>() : !std::isfinite(out.hi);
    f.finish();
  }
  if (!(out.lo < out.hi)) throw ConfigError("interval must satisfy lo < hi");
  return out;
}

ScaleFunction parse_scale(const Json& spec, const std::string& base_dir) {
  if (spec.is_number()) return ScaleFunction::constant(spec.get<double>());
  if (spec.is_string()) return parse_scale(Json{{"kind", spec}}, base_dir);
  Fields f(spec, "scale");
  const std::string kind = f.text("kind");
  const std::optional<Interval> domain =
      f.has("domain") ? std::optional<Interval>(parse_interval(f.get("domain"))) : std::nullopt;
  ScaleFunction out = wrap("scale " + kind, [&]() -> ScaleFunction {
    if (kind == "affine") {
      const double a = f.real("a"), b = f.real_or("b", 0.0);
      return ScaleFunction::affine(a, b, domain.value_or(Interval::real_line()));
    }
    if (kind == "identity") return ScaleFunction::identity(domain.value_or(Interval::real_line()));
    if (kind == "log") {
      const double a = f.real_or("a", 1.0), b = f.real_or("b", 0.0);
      return ScaleFunction::log(a, b, domain.value_or(Interval::positive()));
    }
    if (kind == "power") {
      const double a = f.real_or("a", 1.0), p = f.real("p"), b = f.real_or("b", 0.0);
      return domain ? ScaleFunction::power(a, p, b, *domain) : ScaleFunction::power(a, p, b);
    }
    if (kind == "exp") {
      const double a = f.real_or("a", 1.0), k = f.real_or("k", 1.0), b = f.real_or("b", 0.0);
      return ScaleFunction::exp(a, k, b, domain.value_or(Interval::real_line()));
    }
    if (kind == "constant") {
      return ScaleFunction::constant(f.real("c"), domain.value_or(Interval::real_line()));
    }
    if (kind == "table") {
      if (f.has("csv")) return read_scale_table(resolve(f.text("csv"), base_dir));
      return ScaleFunction::table(numbers(f.get("x"), "scale table x"),
                                  numbers(f.get("y"), "scale table y"));
    }
    if (kind == "logistic") {
      const double half_width = f.real_or("half_width", 30.0);
      const double per_unit = f.real_or("knots_per_unit", 100.0);
      return ScaleFunction::logistic_table(half_width, static_cast<std::size_t>(per_unit));
    }
    throw ConfigError("unknown scale kind '" + kind + "'");
  });
  f.finish();
  return out;
}

SensitivityFamily parse_family(const Json& spec, const std::string& base_dir) {
  if (spec.is_string()) return parse_family(Json{{"kind", spec}}, base_dir);
  Fields f(spec, "family");
  const std::string kind = f.text("kind");
  if (kind == "tabulated") {
    Table2D table = read_lattice(resolve(f.text("csv"), base_dir), {"x", "s", "xi"});
    f.finish();
    return SensitivityFamily(SensitivityFamily::Tabulated{std::move(table)});
  }
  ParamMap params;
  for (const auto& [key, value] : spec.items()) {
    if (key == "kind") continue;
    f.get(key);
    if (value.is_number()) {
      params[key] = value.get<double>();
    } else {
      params[key] = parse_scale(value, base_dir);
    }
  }
  f.finish();
  return wrap("family " + kind, [&] { return make_family(kind, params); });
}

EtaMap parse_eta(const Json& spec, const std::string& base_dir) {
  if (spec.is_string()) return parse_eta(Json{{"kind", spec}}, base_dir);
  Fields f(spec, "eta");
  const std::string kind = f.text("kind");
  EtaMap out = wrap("eta " + kind, [&]() -> EtaMap {
    if (kind == "powerScale") return EtaMap::power_scale(f.real("theta"));
    if (kind == "conjugate") return EtaMap::conjugate(parse_scale(f.get("H"), base_dir));
    if (kind == "identityInS") return EtaMap::identity_in_s();
    if (kind == "constantPerS") return EtaMap::constant_per_s(parse_scale(f.get("nu"), base_dir));
    if (kind == "affineShift") {
      const double delta = f.real("delta"), eps = f.real("eps");
      return EtaMap::affine_shift(delta, eps);
    }
    if (kind == "logBlend") {
      const double kappa = f.real("kappa"), beta = f.real("beta"), delta = f.real("delta");
      return EtaMap::log_blend(kappa, beta, delta);
    }
    if (kind == "additiveLog") {
      const double delta = f.real("delta"), kappa = f.real("kappa");
      return EtaMap::additive_log(delta, kappa);
    }
    if (kind == "tabulated") {
      return EtaMap::tabulated(
          read_lattice(resolve(f.text("csv"), base_dir), {"lambda", "s", "value"}));
    }
    throw ConfigError("unknown eta kind '" + kind + "'");
  });
  f.finish();
  return out;
}

GammaMap parse_gamma(const Json& spec, const std::string& base_dir) {
  if (spec.is_string()) return parse_gamma(Json{{"kind", spec}}, base_dir);
  Fields f(spec, "gamma");
  const std::string kind = f.text("kind");
  GammaMap out = wrap("gamma " + kind, [&]() -> GammaMap {
    if (kind == "powerOfLambda") return GammaMap::power_of_lambda(f.real("r"));
    if (kind == "powerPhi") return GammaMap::power_phi(parse_scale(f.get("phi"), base_dir));
    if (kind == "lambdaOnly") return GammaMap::lambda_only();
    if (kind == "ratioForm") {
      ScaleFunction kappa = parse_scale(f.get("kappa"), base_dir);
      return GammaMap::ratio_form(std::move(kappa), parse_scale(f.get("h"), base_dir));
    }
    if (kind == "tabulated") {
      return GammaMap::tabulated(
          read_lattice(resolve(f.text("csv"), base_dir), {"lambda", "s", "value"}));
    }
    throw ConfigError("unknown gamma kind '" + kind + "'");
  });
  f.finish();
  return out;
}

Representation parse_representation(const Json& spec, const std::string& base_dir) {
  Fields f(spec, "representation");
  const std::string kind = f.text("kind");
  const auto scale = [&](const char* key) { return parse_scale(f.get(key), base_dir); };
  Representation out = wrap("representation " + kind, [&]() -> Representation {
    if (kind == "fechnerian") return Representation::fechnerian(scale("u"));
    if (kind == "subtractive") {
      ScaleFunction u = scale("u");
      return Representation::subtractive(std::move(u), scale("w"));
    }
    if (kind == "gainControl") {
      ScaleFunction u = scale("u");
      return Representation::gain_control(std::move(u), scale("sigma"));
    }
    if (kind == "parallel") {
      ScaleFunction u = scale("u");
      return Representation::parallel(std::move(u), scale("v"));
    }
    if (kind == "balancedParallel") return Representation::balanced_parallel(scale("nu"));
    throw ConfigError("unknown representation kind '" + kind + "'");
  });
  f.finish();
  return out;
}

Grid parse_grid(const Json& spec, std::optional<std::array<std::size_t, 3>> counts) {
  const Json empty = Json::object();
  const Json& g = spec.is_null() ? empty : spec;
  Fields f(g, "grid");
  const auto axis = [&](const char* key, Axis fallback, std::size_t i) {
    const Json* sub = f.has(key) ? &f.get(key) : nullptr;
    return parse_axis(sub, key, std::move(fallback),
                      counts ? std::optional<std::size_t>((*counts)[i]) : std::nullopt);
  };
  Axis I = axis("I", Axis::uniform(0.5, 2.0, 32, Interval::positive()), 0);
  Axis J = axis("J", Axis::uniform(0.5, 2.0, 32, Interval::positive()), 1);
  Axis S = axis("S", Axis::uniform(0.0, 1.0, 32, Interval::real_line()), 2);
  f.finish();
  return wrap("grid", [&] { return Grid(std::move(I), std::move(J), std::move(S)); });
}

}  // namespace simlaw
