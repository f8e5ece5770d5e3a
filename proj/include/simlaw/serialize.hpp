#pragma once

#include <string>

#include "simlaw/config.hpp"
#include "simlaw/fitting.hpp"
#include "simlaw/laws.hpp"
#include "simlaw/report.hpp"
#include "simlaw/scale.hpp"

namespace simlaw {

/// Keys: name, pass, tolerance, maxAbs, meanAbs, worstPoint, evaluatedCount,
/// excludedCount, then notes and components when present. Non-finite numbers
/// become null.
Json to_json(const ResidualReport& report);
Json to_json(const ScaleFunction& scale);
Json to_json(const FitResult& fit);
Json to_json(const Classification& classification);

/// Every report object found in a run report, flattened into one aligned
/// text table (name, pass, maxAbs, meanAbs, evaluated, excluded, tolerance).
std::string render_table(const Json& run_report);

}  // namespace simlaw
