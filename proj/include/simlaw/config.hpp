#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "simlaw/families.hpp"
#include "simlaw/grid.hpp"
#include "simlaw/interval.hpp"
#include "simlaw/maps.hpp"
#include "simlaw/representations.hpp"
#include "simlaw/scale.hpp"

namespace simlaw {

using Json = nlohmann::ordered_json;

/// Structured specifications. Every parser throws ConfigError on a malformed
/// spec; relative CSV paths are resolved against `base_dir`.
///
/// Interval: [lo, hi] with null for an infinite end (finite ends closed), or
/// {"lo", "hi", "lo_open", "hi_open"}.
Interval parse_interval(const Json& spec);

/// A number is the constant function. Objects carry "kind" (affine, identity,
/// log, power, exp, constant, table, logistic) with the variant's
/// coefficients and an optional "domain"; tables give "x" and "y" arrays or a
/// "csv" path.
ScaleFunction parse_scale(const Json& spec, const std::string& base_dir = ".");

/// {"kind": ..., <params>}; parameters are numbers or scale specs. The
/// tabulated kind reads an x,s,xi CSV.
SensitivityFamily parse_family(const Json& spec, const std::string& base_dir = ".");
EtaMap parse_eta(const Json& spec, const std::string& base_dir = ".");
GammaMap parse_gamma(const Json& spec, const std::string& base_dir = ".");
Representation parse_representation(const Json& spec, const std::string& base_dir = ".");

/// {"I": axis, "J": axis, "S": axis}; an axis is {"lo", "hi", "n",
/// "domain"?} with finite lo < hi and n >= 4, or {"samples": [...],
/// "domain"?}. `counts` overrides n per axis. Missing axes take the defaults
/// I = J = [0.5, 2] on ]0, inf[ and S = [0, 1] on the real line, 32 samples.
Grid parse_grid(const Json& spec, std::optional<std::array<std::size_t, 3>> counts = {});

}  // namespace simlaw
