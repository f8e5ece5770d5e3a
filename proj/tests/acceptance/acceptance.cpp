// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: acceptance [path-to-simlaw-cli]

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "simlaw/errors.hpp"
#include "simlaw/eta.hpp"
#include "simlaw/families.hpp"
#include "simlaw/fitting.hpp"
#include "simlaw/laws.hpp"
#include "simlaw/numeric.hpp"
#include "simlaw/representations.hpp"

using namespace simlaw;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kLawTol = 1e-10;
constexpr double kCocycleTol = 1e-10;
constexpr double kConjugacyTol = 1e-9;
constexpr double kGammaTol = 1e-10;
constexpr double kPhiFailFloor = 0.1;
constexpr double kLundbergTol = 1e-9;
constexpr double kRepTol = 1e-10;
constexpr double kPsychTol = 1e-9;
constexpr double kBalancedTol = 1e-10;
constexpr double kAntisymFloor = 0.5;
constexpr double kFitTol = 1e-7;
constexpr double kPowerParamTol = 1e-9;
constexpr double kNoiseTol = 5e-3;
constexpr double kClassifyTol = 1e-6;
constexpr double kThetaTol = 1e-3;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Grid std_grid() { return oracle::standard_grid(32); }

Outcome closed_form_laws() {
  Outcome out;
  const auto grid = std_grid();
  const std::vector<SensitivityFamily> fams = {
      make_family("weber", {{"k", ScaleFunction::affine(1.0, 1.0)}}),
      make_family("fechExp", {{"rho", 1.3}}),
      make_family("subCaseI", {{"a", 1.5}, {"b", 0.5}, {"rho", 0.8}, {"r", 0.3}}),
      make_family("homogeneous", {{"phi", ScaleFunction::affine(1.0, 1.0)}, {"c", 1.0}}),
      make_family("rem3", {}),
      make_family("subCaseII", {{"a", 2.0}, {"c", 1.5}, {"rho", 2.0}, {"r", 1.0}, {"eps", 0.0}}),
      make_family("powerF", {{"phi", 1.3},
                             {"F", ScaleFunction::affine(1.0, 2.0)},
                             {"H", ScaleFunction::power(1.0, 2.0, 0.0)}}),
      make_family("shiftForm", {{"f", ScaleFunction::identity()},
                                {"F", ScaleFunction::exp(1.0, 1.0, 0.0)},
                                {"theta", 2.0}}),
  };
  double worst = 0.0;
  for (const auto& fam : fams) {
    const auto comp = canonical_companions(fam);
    if (!comp) {
      out.require(false, fam.kind() + " has no companions");
      continue;
    }
    const auto r = iverson_residual(fam, comp->first, comp->second, grid, kLawTol);
    worst = std::max(worst, r.max_abs);
    out.require(r.max_abs <= kLawTol, fam.kind() + " maxAbs " + sci(r.max_abs));
  }
  if (out.pass) out.detail = std::to_string(fams.size()) + " families, worst maxAbs " + sci(worst);
  return out;
}

Outcome translational_suite() {
  Outcome out;
  const auto grid = oracle::grid(0.5, 2.0, 4, 0.5, 2.0, 32, 0.0, 2.0, 32, Interval::positive(),
                                 Interval::positive(), Interval::nonnegative());
  const auto exact_pass = [&](const EtaMap& eta) {
    const auto r = check_mult_translational(eta, grid, kCocycleTol);
    const bool ok = r.component("cocycle")->max_abs <= kCocycleTol &&
                    r.component("boundary_zero")->max_abs == 0.0 &&
                    r.component("boundary_identity")->max_abs == 0.0;
    out.require(ok, eta.describe() + " cocycle " + sci(r.component("cocycle")->max_abs));
  };
  for (double theta : {-2.0, -1.0, 0.5, 1.0, 2.0}) exact_pass(EtaMap::power_scale(theta));
  exact_pass(EtaMap::conjugate(ScaleFunction::exp(1.0, 1.0, -1.0)));
  exact_pass(EtaMap::conjugate(ScaleFunction::power(1.0, 3.0, 0.0, Interval::nonnegative())));
  exact_pass(EtaMap::conjugate(ScaleFunction::custom(
      "log1p", [](double t) { return std::log1p(t); }, Interval::nonnegative(), 1,
      [](double y) { return std::expm1(y); })));
  exact_pass(EtaMap::identity_in_s());

  const auto shift_grid = oracle::grid(0.5, 2.0, 4, 1.0, 4.0, 31, 0.0, 2.0, 32,
                                       Interval::positive(), Interval::positive(),
                                       Interval::nonnegative());
  const double eps = 0.5, delta = 1.0;
  const auto bad = check_mult_translational(EtaMap::affine_shift(delta, eps), shift_grid, kCocycleTol);
  const double at2 = std::abs(EtaMap::affine_shift(delta, eps)(2.0, 0.0));
  out.require(!bad.pass, "affineShift passed");
  out.require(!bad.component("boundary_zero")->pass, "affineShift boundary_zero passed");
  out.require(at2 > 0.1 * eps, "affineShift |eta(2,0)| " + sci(at2));
  if (out.pass) {
    out.detail = "9 maps exact, affineShift boundary " + sci(bad.component("boundary_zero")->max_abs) +
                 " (|eta(2,0)| " + sci(at2) + ")";
  }
  return out;
}

Outcome conjugacy_round_trip() {
  Outcome out;
  struct Case {
    EtaMap eta;
    double s_star;
    double jlo, jhi;
  };
  const Case cases[] = {{EtaMap::power_scale(2.0), 1.0, 0.1, 2.1},
                        {EtaMap::conjugate(ScaleFunction::exp(1.0, 1.0, -1.0)), std::exp(1.0) - 1.0,
                         0.01, 1.5}};
  const auto check_grid = oracle::grid(0.5, 2.0, 4, 0.5, 2.0, 64, 0.1, 1.0, 64);
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto j_grid = oracle::grid(0.5, 2.0, 4, c.jlo, c.jhi, 300001, 0.1, 1.0, 64);
    const auto ex = extract_H(c.eta, c.s_star, j_grid, kConjugacyTol);
    const auto back = conjugate_eta(ex.H);
    double m = 0.0;
    std::size_t n = 0;
    for (double l : check_grid.lambdas()) {
      for (double s : check_grid.ss()) {
        m = std::max(m, std::abs(c.eta(l, s) - back(l, s)));
        ++n;
      }
    }
    worst = std::max(worst, m);
    out.require(n == 64 * 64 && m <= kConjugacyTol, c.eta.describe() + " maxAbs " + sci(m));
  }
  if (out.pass) out.detail = "2 maps on 64x64, worst maxAbs " + sci(worst);
  return out;
}

Outcome gamma_formula() {
  Outcome out;
  const auto grid = oracle::grid(0.5, 2.0, 4, 0.5, 2.0, 32, 0.1, 2.0, 32);
  const std::pair<GammaMap, ScaleFunction> cases[] = {
      {GammaMap::lambda_only(), ScaleFunction::power(1.0, -1.0, 0.0)},
      {GammaMap::power_of_lambda(2.0), ScaleFunction::identity()}};
  double worst = 0.0;
  for (const auto& [gamma, H] : cases) {
    const auto [derived, r] = derive_gamma(gamma, H, grid, kGammaTol);
    worst = std::max(worst, r.max_abs);
    out.require(r.pass && r.max_abs <= kGammaTol, gamma.describe() + " residual " + sci(r.max_abs));
    for (double s : grid.ss()) {
      if (derived(1.0, s) != 1.0) {
        out.require(false, gamma.describe() + " gamma(1, s) != 1 at s=" + sci(s));
        break;
      }
    }
  }
  if (out.pass) out.detail = "worst residual " + sci(worst) + ", gamma(1, s) = 1 exactly";
  return out;
}

Outcome phi_witness() {
  Outcome out;
  const auto grid = oracle::grid(0.5, 2.0, 4, 1.5, 2.0, 16, 0.1, 1.0, 16);
  const auto eta = EtaMap::power_scale(1.0);
  const auto bad = phi_consistency(ScaleFunction::identity(), eta, grid, kLawTol);
  const auto good = phi_consistency(ScaleFunction::constant(0.7), eta, grid, kLawTol);
  out.require(!bad.pass && bad.max_abs > kPhiFailFloor, "identity phi maxAbs " + sci(bad.max_abs));
  out.require(good.pass && good.max_abs == 0.0, "constant phi maxAbs " + sci(good.max_abs));
  if (out.pass) out.detail = "identity phi fails at " + sci(bad.max_abs) + ", constant phi 0";
  return out;
}

Outcome lundberg_suite() {
  Outcome out;
  std::mt19937_64 rng(42);
  const Interval xi = Interval::closed(0.1, 1.0), yi = Interval::closed(0.1, 1.0);
  const auto xs = linspace(0.1, 1.0, 30), ys = linspace(0.1, 1.0, 30);
  double worst = 0.0;
  int checks = 0;
  for (int c = 1; c <= 5; ++c) {
    for (int draw = 0; draw < 3; ++draw) {
      const auto p = oracle::lundberg_draw(c, rng, xi, yi);
      const auto r = lundberg_residual(make_lundberg_case(c, p, xi, yi), xs, ys, kLundbergTol);
      worst = std::max(worst, r.max_abs);
      ++checks;
      out.require(r.max_abs <= kLundbergTol && r.evaluated == 900,
                  "case " + std::to_string(c) + " draw " + std::to_string(draw) + " maxAbs " +
                      sci(r.max_abs));
    }
  }
  if (out.pass) out.detail = std::to_string(checks) + " checks, worst maxAbs " + sci(worst);
  return out;
}

Outcome representation_round_trips() {
  Outcome out;
  const auto grid = std_grid();
  const auto id = ScaleFunction::identity();
  const std::pair<SensitivityFamily, Representation> pairs[] = {
      {make_family("rem3", {}), Representation::subtractive(id, id)},
      {make_family("fechExp", {{"rho", 1.0}}), Representation::fechnerian(ScaleFunction::log(1.0, 0.0))},
      {make_family("weber", {{"k", ScaleFunction::affine(1.0, 1.0)}}),
       Representation::gain_control(id, ScaleFunction::identity(Interval::positive()))},
  };
  double worst = 0.0;
  for (const auto& [fam, rep] : pairs) {
    const auto r = representation_residual(fam, rep, grid, kRepTol);
    worst = std::max(worst, r.max_abs);
    out.require(r.max_abs <= kRepTol, rep.describe() + " residual " + sci(r.max_abs));
  }
  const auto pf = make_psychometric(Representation::subtractive(id, id),
                                    ScaleFunction::logistic_table(30.0, 100), Interval::real_line());
  double psych = 0.0;
  for (double a : linspace(0.5, 2.0, 20)) {
    for (double pi : linspace(0.02, 0.98, 20)) {
      psych = std::max(psych, std::abs(pf.p(a, sensitivity_from_psychometric(pf, a, pi)) - pi));
    }
  }
  out.require(psych <= kPsychTol, "psychometric round trip " + sci(psych));
  if (out.pass) {
    out.detail = "worst representation residual " + sci(worst) + ", psychometric " + sci(psych);
  }
  return out;
}

Outcome balanced_decomposition() {
  Outcome out;
  const auto grid = oracle::grid(0.5, 2.0, 16, 0.5, 2.0, 4, 0.05, 0.95, 19, Interval::positive(),
                                 Interval::positive(), Interval::open(0.0, 1.0));
  const auto odd = make_family("balancedParallel", {{"nu", ScaleFunction::affine(2.0, -1.0)}});
  const auto good = decompose_balanced_parallel(odd, grid, kBalancedTol);
  const auto bad = decompose_balanced_parallel(make_family("rem3", {}), grid, kBalancedTol);
  const double anti = bad.report.component("antisymmetry")->max_abs;
  out.require(good.report.component("x_independence")->pass &&
                  good.report.component("antisymmetry")->pass,
              "balanced family residual " + sci(good.report.max_abs));
  out.require(anti >= kAntisymFloor, "x + s antisymmetry " + sci(anti));
  if (out.pass) out.detail = "odd nu residual " + sci(good.report.max_abs) + ", x + s antisymmetry " + sci(anti);
  return out;
}

double max_rel_error(const FitResult& fit, const SampleSet& clean) {
  const auto fam = family_from_params(fit.kind, fit.params);
  double worst = 0.0;
  for (const auto& r : clean.rows) worst = std::max(worst, relative_residual(r.xi, fam(r.x, r.s)));
  return worst;
}

Outcome fit_recovery() {
  Outcome out;
  const auto grid = oracle::standard_grid(16);
  struct Case {
    SensitivityFamily truth;
    std::string kind;
    NamedValues init;
  };
  const Case cases[] = {
      {make_family("subCaseI", {{"a", 1.0}, {"b", 1.0}, {"rho", 1.0}, {"r", 1.0}}), "subCaseI",
       {{"a", 1.2}, {"b", 0.8}, {"rho", 1.2}, {"r", 0.8}}},
      {make_family("rem3", {}), "subCaseII",
       {{"a", 1.1}, {"c", 0.9}, {"rho", 1.1}, {"r", 0.9}, {"eps", 0.05}}},
      {make_family("affineC", {}), "affineB", {{"c", 1.0}, {"d", -0.5}}},
      {make_family("power", {{"kappa", 2.0}, {"rho", 1.5}}), "power", {{"kappa", 1.6}, {"rho", 1.2}}},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto data = sample_family(c.truth, grid);
    const auto fit = fit_family(data, c.kind, c.init, kFitTol);
    const double e = max_rel_error(fit, data);
    worst = std::max(worst, e);
    out.require(e <= kFitTol, c.kind + " relative error " + sci(e));
  }
  const auto pw = fit_power_per_s(
      sample_family(make_family("power", {{"kappa", 2.0}, {"rho", 1.5}}), grid), kPowerParamTol);
  double pe = 0.0;
  for (std::size_t i = 0; i < pw.s.size(); ++i) {
    pe = std::max({pe, std::abs(pw.kappa[i] - 2.0), std::abs(pw.rho[i] - 1.5)});
  }
  out.require(pe <= kPowerParamTol, "power-per-s parameter error " + sci(pe));

  const auto clean = sample_family(cases[0].truth, grid);
  SampleSet noisy = clean;
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 1e-3);
  for (auto& r : noisy.rows) r.xi += noise(rng);
  const auto nfit = fit_family(noisy, "subCaseI", cases[0].init, kNoiseTol);
  const double ne = max_rel_error(nfit, clean);
  out.require(ne <= kNoiseTol && nfit.residual.max_abs <= kNoiseTol,
              "noisy fit error " + sci(ne) + ", held-out " + sci(nfit.residual.max_abs));
  if (out.pass) {
    out.detail = "worst noiseless " + sci(worst) + ", (kappa, rho) " + sci(pe) + ", noisy " + sci(ne);
  }
  return out;
}

Outcome classifier() {
  Outcome out;
  const auto grid = std_grid();
  using Labels = std::set<std::string>;
  const auto labels = [](const Classification& c) { return Labels(c.labels.begin(), c.labels.end()); };
  const auto w = classify_laws(make_family("weber", {{"k", ScaleFunction::affine(1.0, 1.0)}}), grid,
                               kClassifyTol);
  out.require(labels(w) == Labels{"WEBER", "POWER_LAW"}, "weber labels wrong");
  const auto p = classify_laws(make_family("power", {{"kappa", 2.0}, {"rho", 1.01}}), grid,
                               kClassifyTol);
  out.require(labels(p) == Labels{"POWER_LAW"}, "near-miss labels wrong");
  const auto h = classify_laws(
      make_family("homogeneous", {{"phi", ScaleFunction::affine(1.0, 1.0)}, {"c", 1.0}}), grid,
      kClassifyTol);
  out.require(labels(h) == Labels{"SHIFT"}, "homogeneous labels wrong");
  const double theta = h.theta_hat.value_or(NAN);
  out.require(std::abs(theta - 1.0) <= kThetaTol, "theta_hat " + sci(theta));
  if (out.pass) out.detail = "weber, near-miss and homogeneous labelled; theta_hat - 1 = " + sci(theta - 1.0);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& exe, const std::string& command, const fs::path& config,
            const fs::path& out_dir) {
  const std::string cmd = "\"" + exe + "\" " + command + " --config \"" + config.string() +
                          "\" --out \"" + out_dir.string() + "\" > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome cli_determinism(const std::string& exe) {
  Outcome out;
  if (exe.empty()) {
    out.require(false, "no CLI path given");
    return out;
  }
  const fs::path dir = fs::temp_directory_path() / "simlaw_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return dir / name;
  };
  const auto pass_cfg = write("pass.json", R"({
  "family": {"kind": "rem3"},
  "gamma": {"kind": "lambdaOnly"},
  "eta": {"kind": "powerScale", "theta": -1},
  "grid": {"I": {"lo": 0.5, "hi": 2, "n": 20}, "J": {"lo": 0.5, "hi": 2, "n": 20},
           "S": {"lo": 0, "hi": 1, "n": 20}},
  "tol": 1e-10
})");
  const auto fail_cfg = write("fail.json", R"({
  "eta": {"kind": "affineShift", "delta": 1, "eps": 0.5},
  "grid": {"J": {"lo": 1, "hi": 4, "n": 16}, "S": {"lo": 0, "hi": 2, "n": 16, "domain": [0, null]}}
})");
  const auto noisy_cfg = write("noisy.json", R"({
  "family": {"kind": "subCaseI", "a": 1, "b": 1, "rho": 1, "r": 1},
  "noise": 0.001,
  "seed": 7,
  "grid": {"I": {"lo": 0.5, "hi": 2, "n": 12}, "S": {"lo": 0, "hi": 1, "n": 12}}
})");
  const int a = run_cli(exe, "check", pass_cfg, dir / "a");
  const int b = run_cli(exe, "check", pass_cfg, dir / "b");
  out.require(a == 0 && b == 0, "passing check exit " + std::to_string(a) + "/" + std::to_string(b));
  out.require(slurp(dir / "a" / "check.json") == slurp(dir / "b" / "check.json"),
              "check reports differ");
  const int f = run_cli(exe, "check", fail_cfg, dir / "f");
  out.require(f == 1, "failing check exit " + std::to_string(f));
  run_cli(exe, "simulate", noisy_cfg, dir / "s1");
  run_cli(exe, "simulate", noisy_cfg, dir / "s2");
  out.require(!slurp(dir / "s1" / "samples.csv").empty() &&
                  slurp(dir / "s1" / "samples.csv") == slurp(dir / "s2" / "samples.csv") &&
                  slurp(dir / "s1" / "simulate.json") == slurp(dir / "s2" / "simulate.json"),
              "seeded simulate outputs differ");
  if (out.pass) out.detail = "identical reports and samples; exit 0 on pass, 1 on fail";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form law suite", closed_form_laws},
      {"translational suite", translational_suite},
      {"conjugacy round trip", conjugacy_round_trip},
      {"gamma formula from H", gamma_formula},
      {"phi consistency witness", phi_witness},
      {"Lundberg suite", lundberg_suite},
      {"representation round trips", representation_round_trips},
      {"balanced parallel decomposition", balanced_decomposition},
      {"fit recovery", fit_recovery},
      {"classifier", classifier},
      {"CLI determinism and exit status", [&] { return cli_determinism(exe); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %-34s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
