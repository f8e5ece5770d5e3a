#include "simlaw/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simlaw/errors.hpp"

namespace simlaw {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
  return out;
}

}  // namespace

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          const std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || split(line) != header) {
    throw IoError(path + ": expected header '" + join(header) + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw IoError(path + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(header.size()) + " fields");
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw IoError(path + ":" + std::to_string(line_no) + ": '" + f + "' is not a number");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << join(header) << '\n';
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

SampleSet read_samples(const std::string& path) {
  SampleSet out;
  for (const auto& r : read_csv(path, {"x", "s", "xi"})) out.rows.push_back({r[0], r[1], r[2]});
  return out;
}

void write_samples(const std::string& path, const SampleSet& samples) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : samples.rows) rows.push_back({r.x, r.s, r.xi});
  write_csv(path, {"x", "s", "xi"}, rows);
}

ScaleFunction read_scale_table(const std::string& path) {
  std::vector<std::pair<double, double>> knots;
  for (const auto& r : read_csv(path, {"x", "y"})) knots.push_back({r[0], r[1]});
  return ScaleFunction::table(knots);
}

void write_scale_table(const std::string& path, const ScaleFunction& table) {
  const auto* t = std::get_if<ScaleFunction::Table>(&table.variant());
  if (!t) throw IoError("only table scales can be written as x,y CSV");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < t->x.size(); ++i) rows.push_back({t->x[i], t->y[i]});
  write_csv(path, {"x", "y"}, rows);
}

Table2D read_lattice(const std::string& path, const std::array<std::string, 3>& header) {
  std::vector<std::array<double, 3>> rows;
  for (const auto& r : read_csv(path, {header[0], header[1], header[2]})) {
    rows.push_back({r[0], r[1], r[2]});
  }
  try {
    return Table2D::from_rows(rows);
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace simlaw
