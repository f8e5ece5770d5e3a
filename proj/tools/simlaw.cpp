// Command-line front end: simulate, check, fit, classify, report.

#include <CLI11.hpp>
#include <iostream>

#include "simlaw/cli.hpp"
#include "simlaw/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Similarity-law residual checks, fits and classification"};
  app.set_version_flag("--version", simlaw::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", grid;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Write x,s,xi samples or a,x,p psychometric values"},
      {"check", "Run law, translational, representation and property checks"},
      {"fit", "Fit a catalog family, per-s power law or subtractive scales"},
      {"classify", "Label a family WEBER / POWER_LAW / SHIFT / GENERAL"},
      {"report", "Render a prior JSON report as an aligned table"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--tol", tol, "Residual tolerance (default 1e-8)");
    sub->add_option("--seed", seed, "Noise seed (default 42)");
    sub->add_option("--grid", grid, "Sample counts nx,nl,ns");
  }
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    simlaw::RunConfig cfg = simlaw::load_run_config(command, config_path);
    cfg.out_dir = out_dir;
    if (tol) cfg.tol = *tol;
    if (seed) cfg.seed = *seed;
    if (!grid.empty()) cfg.grid_counts = simlaw::parse_grid_counts(grid);
    const simlaw::RunOutcome outcome = simlaw::run(cfg);
    if (!outcome.text.empty()) std::cout << outcome.text;
    std::cout << command << ": " << (outcome.status == 0 ? "pass" : "fail") << " ("
              << out_dir << "/" << command << ".json)\n";
    return outcome.status;
  } catch (const simlaw::Error& e) {
    std::cerr << "simlaw " << command << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "simlaw " << command << ": unexpected error: " << e.what() << '\n';
    return 3;
  }
}
