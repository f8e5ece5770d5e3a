#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simlaw/config.hpp"

namespace simlaw {

inline constexpr const char* kVersion = "0.1.0";

/// One invocation of the command-line tool.
struct RunConfig {
  std::string command;  // simulate, check, fit, classify, report
  Json spec = Json::object();
  std::string base_dir = ".";
  std::string out_dir = ".";
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::optional<std::array<std::size_t, 3>> grid_counts;
};

/// Reads a JSON config file; relative paths inside it resolve against the
/// file's directory. Top-level "tol" and "seed" set the defaults that
/// command-line flags may override.
RunConfig load_run_config(const std::string& command, const std::string& path);

/// Parses "nx,nl,ns" (each at least 4).
std::array<std::size_t, 3> parse_grid_counts(const std::string& text);

struct RunOutcome {
  int status = 0;  // 0 iff every report passed
  Json report;
  std::vector<std::string> artifacts;  // files written, relative to out_dir
  std::string text;                    // rendered table for the report command
};

/// Executes the command and writes `<command>.json` plus any CSV artifacts to
/// out_dir. Module errors propagate with the failing operation named.
RunOutcome run(const RunConfig& config);

}  // namespace simlaw
