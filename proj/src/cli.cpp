#include "simlaw/cli.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "simlaw/csv.hpp"
#include "simlaw/errors.hpp"
#include "simlaw/eta.hpp"
#include "simlaw/fitting.hpp"
#include "simlaw/laws.hpp"
#include "simlaw/numeric.hpp"
#include "simlaw/representations.hpp"
#include "simlaw/serialize.hpp"

namespace simlaw {
namespace {

const std::set<std::string> kCommands = {"simulate", "check", "fit", "classify", "report"};
const std::set<std::string> kTopLevel = {
    "command", "family", "gamma", "eta",   "representation", "link", "stimulus", "grid",
    "checks",  "tol",    "seed",  "phi",   "theta",          "sStar", "H",       "lundberg",
    "fit",     "input",  "noise"};

// View of the config where a check's own fields shadow the top level.
class Scope {
 public:
  Scope(const RunConfig& cfg, const Json* local) : cfg_(cfg), local_(local) {}

  bool has(const std::string& key) const {
    return (local_ && local_->contains(key)) || cfg_.spec.contains(key);
  }
  const Json& get(const std::string& key, const std::string& op) const {
    if (local_ && local_->contains(key)) return local_->at(key);
    if (cfg_.spec.contains(key)) return cfg_.spec.at(key);
    throw ConfigError(op + " needs '" + key + "'");
  }
  double real(const std::string& key, const std::string& op) const {
    const Json& v = get(key, op);
    if (!v.is_number()) throw ConfigError(op + ": '" + key + "' must be a number");
    return v.get<double>();
  }
  SensitivityFamily family(const std::string& op) const {
    return parse_family(get("family", op), cfg_.base_dir);
  }
  EtaMap eta(const std::string& op) const { return parse_eta(get("eta", op), cfg_.base_dir); }
  GammaMap gamma(const std::string& op) const {
    return parse_gamma(get("gamma", op), cfg_.base_dir);
  }
  ScaleFunction scale(const std::string& key, const std::string& op) const {
    return parse_scale(get(key, op), cfg_.base_dir);
  }
  Representation representation(const std::string& op) const {
    return parse_representation(get("representation", op), cfg_.base_dir);
  }
  Interval stimulus(const Grid& grid) const {
    return has("stimulus") ? parse_interval(get("stimulus", "psychometric")) : grid.x().domain;
  }

 private:
  const RunConfig& cfg_;
  const Json* local_;
};

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

Json resolved_config(const RunConfig& cfg) {
  Json out = cfg.spec;
  out["command"] = cfg.command;
  out["tol"] = cfg.tol;
  out["seed"] = cfg.seed;
  if (cfg.grid_counts) {
    out["gridCounts"] = {(*cfg.grid_counts)[0], (*cfg.grid_counts)[1], (*cfg.grid_counts)[2]};
  }
  return out;
}

SampleSet add_noise(SampleSet samples, double sigma, std::uint64_t seed) {
  if (sigma <= 0.0) return samples;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (auto& r : samples.rows) r.xi += noise(rng);
  samples.noise_sigma = sigma;
  return samples;
}

double noise_sigma(const RunConfig& cfg) {
  if (!cfg.spec.contains("noise")) return 0.0;
  const Json& n = cfg.spec.at("noise");
  if (!n.is_number() || n.get<double>() < 0.0) {
    throw ConfigError("'noise' must be a non-negative number (standard deviation)");
  }
  return n.get<double>();
}

std::vector<std::string> inferred_checks(const RunConfig& cfg) {
  const Json& s = cfg.spec;
  std::vector<std::string> out;
  if (s.contains("lundberg")) out.push_back("lundberg");
  if (s.contains("family") && s.contains("gamma") && s.contains("eta")) {
    out.push_back("iverson");
  } else if (s.contains("eta") && !s.contains("family")) {
    out.push_back("translational");
  }
  if (s.contains("family") && s.contains("representation")) out.push_back("representation");
  if (s.contains("representation") && s.contains("link")) out.push_back("psychometric");
  if (out.empty() && s.contains("family")) out.push_back("companions");
  if (out.empty()) throw ConfigError("check: nothing to check; give 'checks' explicitly");
  return out;
}

std::vector<ResidualReport> run_check(const std::string& name, const Scope& scope,
                                      const Grid& grid, double tol) {
  if (name == "iverson") {
    return {iverson_residual(scope.family(name), scope.gamma(name), scope.eta(name), grid, tol)};
  }
  if (name == "companions") {
    const SensitivityFamily fam = scope.family(name);
    const auto pair = canonical_companions(fam);
    if (!pair) throw ConfigError("family " + fam.kind() + " has no canonical companions");
    ResidualReport r = iverson_residual(fam, pair->first, pair->second, grid, tol);
    r.notes.push_back("gamma = " + pair->first.describe() + ", eta = " + pair->second.describe());
    return {r};
  }
  if (name == "weber") return {weber_residual(scope.family(name), grid, tol)};
  if (name == "powerLaw") {
    return {power_law_residual(scope.family(name), scope.scale("phi", name), grid, tol)};
  }
  if (name == "shift") {
    return {shift_invariance_residual(scope.family(name), scope.real("theta", name), grid, tol)};
  }
  if (name == "translational") return {check_mult_translational(scope.eta(name), grid, tol)};
  if (name == "conjugacy") {
    const EtaMap eta = scope.eta(name);
    ExtractedH extracted = extract_H(eta, scope.real("sStar", name), grid, tol);
    return {extracted.reconstruction};
  }
  if (name == "deriveGamma") {
    return {derive_gamma(scope.gamma(name), scope.scale("H", name), grid, tol).second};
  }
  if (name == "phiConsistency") {
    return {phi_consistency(scope.scale("phi", name), scope.eta(name), grid, tol)};
  }
  if (name == "phiForm") {
    return {extract_phi_form(scope.family(name), scope.eta(name), scope.gamma(name),
                             scope.real("sStar", name), grid, tol)
                .report};
  }
  if (name == "representation") {
    return {representation_residual(scope.family(name), scope.representation(name), grid, tol)};
  }
  if (name == "psychometric") {
    const PsychometricFamily pf = make_psychometric(
        scope.representation(name), scope.scale("link", name), scope.stimulus(grid));
    FamilyProperties props = check_family_properties(pf, grid, tol);
    return {props.anchored, props.parallel, props.balanced};
  }
  if (name == "balancedDecomposition") {
    return {decompose_balanced_parallel(scope.family(name), grid, tol).report};
  }
  if (name == "lundberg") {
    const Json& spec = scope.get("lundberg", name);
    if (!spec.is_object() || !spec.contains("case")) throw ConfigError("lundberg needs 'case'");
    std::map<std::string, double> params;
    if (spec.contains("params")) {
      for (const auto& [k, v] : spec.at("params").items()) {
        if (!v.is_number()) throw ConfigError("lundberg params must be numbers");
        params[k] = v.get<double>();
      }
    }
    const Interval xi = parse_interval(spec.value("x", Json::array({0.0, 1.0})));
    const Interval yi = parse_interval(spec.value("y", Json::array({0.0, 1.0})));
    const auto n = static_cast<std::size_t>(spec.value("n", 30));
    RealFn ell;
    if (spec.contains("ell")) {
      ScaleFunction f = parse_scale(spec.at("ell"));
      ell = [f](double x) { return f.eval(x); };
    }
    const LundbergSolution sol = make_lundberg_case(spec.at("case").get<int>(), params, xi, yi, ell);
    ResidualReport r = lundberg_residual(sol, linspace(xi.lo, xi.hi, n), linspace(yi.lo, yi.hi, n),
                                         tol);
    if (!sol.philandering) r.notes.push_back("h, ell or m is constant: not philandering");
    return {r};
  }
  throw ConfigError("unknown check '" + name + "'");
}

RunOutcome run_check_command(const RunConfig& cfg, const Grid& grid) {
  std::vector<std::pair<std::string, const Json*>> checks;
  std::vector<std::string> inferred;
  if (cfg.spec.contains("checks")) {
    for (const auto& c : cfg.spec.at("checks")) {
      if (c.is_string()) {
        checks.push_back({c.get<std::string>(), nullptr});
      } else if (c.is_object() && c.contains("name")) {
        checks.push_back({c.at("name").get<std::string>(), &c});
      } else {
        throw ConfigError("each check is a name or an object with 'name'");
      }
    }
  } else {
    inferred = inferred_checks(cfg);
    for (const auto& n : inferred) checks.push_back({n, nullptr});
  }
  RunOutcome out;
  Json reports = Json::array();
  bool pass = true;
  for (const auto& [name, local] : checks) {
    const Scope scope(cfg, local);
    std::vector<ResidualReport> results;
    try {
      results = run_check(name, scope, grid, cfg.tol);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw Error("check " + name + ": " + e.what());
    }
    for (const auto& r : results) {
      Json j = to_json(r);
      j["check"] = name;
      reports.push_back(j);
      pass = pass && r.pass;
    }
  }
  out.report["pass"] = pass;
  out.report["reports"] = reports;
  out.status = pass ? 0 : 1;
  return out;
}

RunOutcome run_simulate(const RunConfig& cfg, const Grid& grid) {
  RunOutcome out;
  const Scope scope(cfg, nullptr);
  if (cfg.spec.contains("family")) {
    const SampleSet samples =
        add_noise(sample_family(scope.family("simulate"), grid), noise_sigma(cfg), cfg.seed);
    write_samples(join_path(cfg.out_dir, "samples.csv"), samples);
    out.artifacts.push_back("samples.csv");
    out.report["rows"] = samples.rows.size();
  } else if (cfg.spec.contains("representation") && cfg.spec.contains("link")) {
    const PsychometricFamily pf = make_psychometric(
        scope.representation("simulate"), scope.scale("link", "simulate"), scope.stimulus(grid));
    std::vector<std::vector<double>> rows;
    for (double a : grid.xs()) {
      for (double x : grid.xs()) {
        try {
          rows.push_back({a, x, pf.p(a, x)});
        } catch (const DomainError&) {
        } catch (const RangeError&) {
        }
      }
    }
    write_csv(join_path(cfg.out_dir, "psychometric.csv"), {"a", "x", "p"}, rows);
    out.artifacts.push_back("psychometric.csv");
    out.report["rows"] = rows.size();
  } else {
    throw ConfigError("simulate needs 'family' or 'representation' with 'link'");
  }
  out.report["pass"] = true;
  return out;
}

RunOutcome run_fit(const RunConfig& cfg, const Grid& grid) {
  RunOutcome out;
  const Scope scope(cfg, nullptr);
  if (!cfg.spec.contains("fit") || !cfg.spec.at("fit").is_object()) {
    throw ConfigError("fit needs a 'fit' object");
  }
  const Json& spec = cfg.spec.at("fit");
  const std::string op = spec.value("op", std::string("family"));
  SampleSet samples;
  if (cfg.spec.contains("input")) {
    const std::string path = cfg.spec.at("input").get<std::string>();
    const std::filesystem::path p(path);
    samples = read_samples(p.is_absolute() ? path : join_path(cfg.base_dir, path));
  } else {
    samples = add_noise(sample_family(scope.family("fit"), grid), noise_sigma(cfg), cfg.seed);
  }

  FitResult fit;
  try {
    if (op == "family") {
      if (!spec.contains("kind")) throw ConfigError("fit.kind is required");
      NamedValues init;
      if (spec.contains("init")) {
        for (const auto& [k, v] : spec.at("init").items()) init.push_back({k, v.get<double>()});
      }
      fit = fit_family(samples, spec.at("kind").get<std::string>(), init, cfg.tol);
    } else if (op == "powerPerS") {
      fit = fit_power_per_s(samples, cfg.tol).fit;
    } else if (op == "subtractive") {
      const auto knots = static_cast<std::size_t>(spec.value("knots", 32));
      SubtractiveFit sub = fit_scales_subtractive(samples, knots, cfg.tol);
      write_scale_table(join_path(cfg.out_dir, "u.csv"), sub.u);
      write_scale_table(join_path(cfg.out_dir, "w.csv"), sub.w);
      out.artifacts = {"u.csv", "w.csv"};
      fit = sub.fit;
    } else {
      throw ConfigError("unknown fit op '" + op + "'");
    }
  } catch (const NonConvergenceError& e) {
    fit = e.best();
    fit.notes.push_back(e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw Error("fit " + op + ": " + e.what());
  }
  const bool pass = fit.converged && fit.residual.pass;
  out.report["pass"] = pass;
  out.report["fit"] = to_json(fit);
  out.status = pass ? 0 : 1;
  return out;
}

RunOutcome run_classify(const RunConfig& cfg, const Grid& grid) {
  RunOutcome out;
  const Scope scope(cfg, nullptr);
  Classification c;
  try {
    c = classify_laws(scope.family("classify"), grid, cfg.tol);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw Error(std::string("classify: ") + e.what());
  }
  out.report["pass"] = true;
  out.report["classification"] = to_json(c);
  return out;
}

RunOutcome run_report(const RunConfig& cfg) {
  if (!cfg.spec.contains("input")) throw ConfigError("report needs 'input' (a prior report)");
  const std::string path = cfg.spec.at("input").get<std::string>();
  const std::filesystem::path p(path);
  std::ifstream in(p.is_absolute() ? path : join_path(cfg.base_dir, path));
  if (!in) throw IoError("cannot open " + path);
  Json prior;
  try {
    in >> prior;
  } catch (const std::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  RunOutcome out;
  out.text = render_table(prior);
  std::ofstream txt(join_path(cfg.out_dir, "report.txt"));
  if (!txt) throw IoError("cannot write report.txt");
  txt << out.text;
  out.artifacts.push_back("report.txt");
  const bool pass = prior.value("pass", false);
  out.report["pass"] = pass;
  out.status = pass ? 0 : 1;
  return out;
}

}  // namespace

RunConfig load_run_config(const std::string& command, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  RunConfig cfg;
  cfg.command = command;
  try {
    cfg.spec = Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!cfg.spec.is_object()) throw ConfigError(path + ": config must be a JSON object");
  const auto parent = std::filesystem::path(path).parent_path();
  cfg.base_dir = parent.empty() ? "." : parent.string();
  if (cfg.spec.contains("tol")) cfg.tol = cfg.spec.at("tol").get<double>();
  if (cfg.spec.contains("seed")) cfg.seed = cfg.spec.at("seed").get<std::uint64_t>();
  return cfg;
}

std::array<std::size_t, 3> parse_grid_counts(const std::string& text) {
  std::array<std::size_t, 3> out{};
  std::stringstream ss(text);
  std::string field;
  std::size_t i = 0;
  while (std::getline(ss, field, ',')) {
    if (i >= 3) throw ConfigError("--grid takes exactly three counts nx,nl,ns");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size() || v < 4) {
      throw ConfigError("--grid counts must be integers >= 4, got '" + field + "'");
    }
    out[i++] = static_cast<std::size_t>(v);
  }
  if (i != 3) throw ConfigError("--grid takes exactly three counts nx,nl,ns");
  return out;
}

RunOutcome run(const RunConfig& cfg) {
  if (!kCommands.count(cfg.command)) throw ConfigError("unknown command '" + cfg.command + "'");
  if (!(cfg.tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (cfg.spec.contains("command") && cfg.spec.at("command") != cfg.command) {
    throw ConfigError("config is for command '" + cfg.spec.at("command").get<std::string>() +
                      "', not '" + cfg.command + "'");
  }
  for (const auto& [key, value] : cfg.spec.items()) {
    if (!kTopLevel.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  std::filesystem::create_directories(cfg.out_dir);

  RunOutcome out;
  if (cfg.command == "report") {
    out = run_report(cfg);
  } else {
    const Grid grid =
        parse_grid(cfg.spec.contains("grid") ? cfg.spec.at("grid") : Json(), cfg.grid_counts);
    if (cfg.command == "simulate") out = run_simulate(cfg, grid);
    if (cfg.command == "check") out = run_check_command(cfg, grid);
    if (cfg.command == "fit") out = run_fit(cfg, grid);
    if (cfg.command == "classify") out = run_classify(cfg, grid);
  }

  Json report;
  report["tool"] = "simlaw";
  report["version"] = kVersion;
  report["command"] = cfg.command;
  report["pass"] = out.report.value("pass", false);
  report["config"] = resolved_config(cfg);
  for (const auto& [key, value] : out.report.items()) {
    if (key != "pass") report[key] = value;
  }
  if (!out.artifacts.empty()) report["artifacts"] = out.artifacts;
  out.report = report;
  write_json(join_path(cfg.out_dir, cfg.command + ".json"), report);
  return out;
}

}  // namespace simlaw
