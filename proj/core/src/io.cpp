#include "sphereflock/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "sphereflock/errors.hpp"

namespace sphereflock {
namespace {

using nlohmann::ordered_json;

void append_g17(std::string& out, double value) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", value);
  out.append(buf, static_cast<std::size_t>(n));
}

ordered_json to_json(const Thresholds& t) {
  return {
      {"mu", t.mu},
      {"C", t.c_const},
      {"V0", t.v0},
      {"E0", t.e0},
      {"X_M", t.x_m},
      {"X_M_residual", t.x_m_residual},
      {"psi_m", t.psi_m},
      {"delta", t.delta},
      {"large_ratio", t.large_ratio},
  };
}

ordered_json to_json(const AdmissibilityReport& r) {
  return {
      {"thresholds", to_json(r.thresholds)},
      {"V_initial", r.v_initial},
      {"E_initial", r.e_initial},
      {"X_initial", r.x_initial},
      {"X_bound", r.bound_x},
      {"speed_ok", r.speed_ok},
      {"energy_ok", r.energy_ok},
      {"spread_ok", r.spread_ok},
      {"admissible", r.admissible},
  };
}

ordered_json to_json(const DiagnosticsFrame& f) {
  return {
      {"t", f.t},
      {"E", f.e_total},
      {"E_K", f.e_kinetic},
      {"E_C", f.e_config},
      {"D_x", f.d_x},
      {"D_v", f.d_v},
      {"V_max", f.v_max},
      {"flock_align", f.flock_align},
      {"antipode_margin", f.antipode_margin},
      {"drift_radial", f.drift.radial},
      {"drift_tangency", f.drift.tangency},
      {"X_max", f.x_max},
  };
}

ordered_json to_json(const DecayFit& fit, std::pair<double, double> window) {
  return {
      {"quantity", "D_x"},
      {"window", {window.first, window.second}},
      {"rate", fit.rate},
      {"r_squared", fit.r_squared},
      {"r_squared_defined", fit.r_squared_defined},
      {"samples", fit.samples},
  };
}

}  // namespace

const std::vector<std::string>& frame_columns() {
  static const std::vector<std::string> columns = {
      "t",   "E",           "E_K",             "E_C",
      "D_x", "D_v",         "V_max",           "flock_align",
      "antipode_margin",    "drift_radial",    "drift_tangency",
      "X_max"};
  return columns;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : frame_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv_row(const DiagnosticsFrame& f) {
  const double values[] = {f.t,           f.e_total,        f.e_kinetic,
                           f.e_config,    f.d_x,            f.d_v,
                           f.v_max,       f.flock_align,    f.antipode_margin,
                           f.drift.radial, f.drift.tangency, f.x_max};
  std::string out;
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    first = false;
    append_g17(out, v);
  }
  return out;
}

void write_frames_csv(std::ostream& out, const Trajectory& traj) {
  out << csv_header() << '\n';
  for (const Frame& f : traj.frames) out << csv_row(f.diag) << '\n';
}

void write_full_state_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,agent,x0,x1,x2,v0,v1,v2\n";
  std::string line;
  for (const Frame& f : traj.frames) {
    for (std::size_t i = 0; i < f.state.size(); ++i) {
      line.clear();
      append_g17(line, f.t);
      line += ',';
      line += std::to_string(i);
      for (int d = 0; d < 3; ++d) {
        line += ',';
        append_g17(line, f.state.x[i][d]);
      }
      for (int d = 0; d < 3; ++d) {
        line += ',';
        append_g17(line, f.state.v[i][d]);
      }
      out << line << '\n';
    }
  }
}

std::size_t CsvTable::index(const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return i;
  }
  throw ConfigError("CSV has no column '" + column + "'");
}

std::vector<TimeValue> CsvTable::series(const std::string& t_column,
                                        const std::string& value_column) const {
  const std::size_t ti = index(t_column);
  const std::size_t vi = index(value_column);
  std::vector<TimeValue> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back({row[ti], row[vi]});
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  const auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      cells.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (table.columns.empty()) {
      table.columns = std::move(cells);
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " +
                        std::to_string(table.columns.size()) + " fields");
    }
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string& c = cells[i];
      const auto res = std::from_chars(c.data(), c.data() + c.size(), row[i]);
      if (res.ec != std::errc() || res.ptr != c.data() + c.size()) {
        throw ConfigError("CSV line " + std::to_string(line_no) +
                          ": not a number '" + c + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw ConfigError("CSV is empty");
  return table;
}

std::string thresholds_json(const Thresholds& t) { return to_json(t).dump(2); }

std::string admissibility_json(const AdmissibilityReport& r) {
  return to_json(r).dump(2);
}

std::string fit_json(const DecayFit& fit, std::pair<double, double> window) {
  return to_json(fit, window).dump(2);
}

std::string summary_json(const RunSummary& s) {
  ordered_json j;
  j["label"] = s.label;
  j["kernel"] = s.kernel;
  j["sigma"] = s.sigma;
  if (s.admissibility) {
    j["admissibility"] = to_json(*s.admissibility);
    j["delta"] = s.admissibility->thresholds.delta;
  } else {
    j["admissibility"] = nullptr;
    j["admissibility_error"] = s.admissibility_error;
    j["delta"] = nullptr;
  }
  if (s.fit) {
    j["fit"] = to_json(*s.fit, s.fit_window);
  } else {
    j["fit"] = nullptr;
    j["fit_error"] = s.fit_error;
  }
  j["initial"] = to_json(s.initial);
  j["final"] = to_json(s.final);
  j["input_adjustment"] = {{"max_radial", s.adjustment.max_radial},
                           {"max_tangency", s.adjustment.max_tangency}};
  j["runtime"] = {
      {"steps", s.stats.steps},
      {"frames", s.stats.frames},
      {"threads", s.stats.threads},
      {"wall_seconds", s.stats.wall_seconds},
      {"max_step_drift_radial", s.stats.max_step_drift.radial},
      {"max_step_drift_tangency", s.stats.max_step_drift.tangency},
      {"max_energy_increase", s.stats.max_energy_increase},
      {"max_relative_energy_increase", s.stats.max_relative_energy_increase},
  };
  return j.dump(2);
}

}  // namespace sphereflock
