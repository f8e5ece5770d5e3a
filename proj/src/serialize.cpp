#include "simlaw/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace simlaw {
namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string cell(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "PASS" : "FAIL";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v.get<double>());
    return buf;
  }
  if (v.is_number()) return std::to_string(v.get<long long>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void collect(const Json& node, const std::string& prefix,
             std::vector<std::vector<std::string>>& rows) {
  if (node.is_object()) {
    if (node.contains("maxAbs") && node.contains("pass")) {
      const std::string name = prefix.empty() ? cell(node.value("name", Json("report")))
                                              : prefix + "/" + cell(node.value("name", Json("")));
      rows.push_back({name, cell(node["pass"]), cell(node["maxAbs"]), cell(node["meanAbs"]),
                      cell(node["evaluatedCount"]), cell(node["excludedCount"]),
                      cell(node["tolerance"])});
      if (node.contains("components")) {
        for (const auto& c : node["components"]) collect(c, name, rows);
      }
      return;
    }
    for (const auto& [key, value] : node.items()) {
      if (key != "config") collect(value, prefix, rows);
    }
  } else if (node.is_array()) {
    for (const auto& v : node) collect(v, prefix, rows);
  }
}

}  // namespace

Json to_json(const ResidualReport& report) {
  Json j;
  j["name"] = report.name;
  j["pass"] = report.pass;
  j["tolerance"] = number(report.tolerance);
  j["maxAbs"] = number(report.max_abs);
  j["meanAbs"] = number(report.mean_abs);
  Json point = Json::object();
  for (const auto& [k, v] : report.worst_point) point[k] = number(v);
  j["worstPoint"] = point;
  j["evaluatedCount"] = report.evaluated;
  j["excludedCount"] = report.excluded;
  if (!report.notes.empty()) j["notes"] = report.notes;
  if (!report.components.empty()) {
    Json parts = Json::array();
    for (const auto& c : report.components) parts.push_back(to_json(c));
    j["components"] = parts;
  }
  return j;
}

Json to_json(const ScaleFunction& scale) {
  Json j;
  j["kind"] = scale.kind();
  if (const auto* t = std::get_if<ScaleFunction::Table>(&scale.variant())) {
    Json xs = Json::array(), ys = Json::array();
    for (double v : t->x) xs.push_back(number(v));
    for (double v : t->y) ys.push_back(number(v));
    j["x"] = xs;
    j["y"] = ys;
  } else {
    j["describe"] = scale.describe();
  }
  return j;
}

Json to_json(const FitResult& fit) {
  Json j;
  j["kind"] = fit.kind;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  Json params = Json::object();
  for (const auto& [k, v] : fit.params) params[k] = number(v);
  j["params"] = params;
  if (!fit.scales.empty()) {
    Json scales = Json::object();
    for (const auto& [k, v] : fit.scales) scales[k] = to_json(v);
    j["scales"] = scales;
  }
  j["residual"] = to_json(fit.residual);
  if (!fit.notes.empty()) j["notes"] = fit.notes;
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["labels"] = c.labels;
  j["weber"] = to_json(c.weber);
  if (c.power_law) j["powerLaw"] = to_json(*c.power_law);
  if (!c.phi_knots.empty()) {
    Json knots = Json::array();
    for (const auto& [s, v] : c.phi_knots) knots.push_back({number(s), number(v)});
    j["phiHat"] = knots;
  }
  if (c.shift) j["shift"] = to_json(*c.shift);
  if (c.theta_hat) j["thetaHat"] = number(*c.theta_hat);
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

std::string render_table(const Json& run_report) {
  std::vector<std::vector<std::string>> rows = {
      {"report", "status", "maxAbs", "meanAbs", "evaluated", "excluded", "tolerance"}};
  collect(run_report, "", rows);
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      std::string c = rows[k][i];
      c.resize(width[i], ' ');
      out += (i ? "  " : "") + c;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
    if (k == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w;
      out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
    }
  }
  return out;
}

}  // namespace simlaw
