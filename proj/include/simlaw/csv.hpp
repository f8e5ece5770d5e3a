#pragma once

#include <array>
#include <string>
#include <vector>

#include "simlaw/fitting.hpp"
#include "simlaw/scale.hpp"
#include "simlaw/table2d.hpp"

namespace simlaw {

/// Numeric CSV with a fixed header row. Throws IoError when the file cannot be
/// read, the header differs from `header`, or a field is not a number.
std::vector<std::vector<double>> read_csv(const std::string& path,
                                          const std::vector<std::string>& header);
/// Values are written with 17 significant digits so they read back exactly.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// `x,s,xi`
SampleSet read_samples(const std::string& path);
void write_samples(const std::string& path, const SampleSet& samples);

/// `x,y`, ascending in x.
ScaleFunction read_scale_table(const std::string& path);
void write_scale_table(const std::string& path, const ScaleFunction& table);

/// Three-column lattice, e.g. `lambda,s,value` or `x,s,xi`.
Table2D read_lattice(const std::string& path, const std::array<std::string, 3>& header);

}  // namespace simlaw
