#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sphereflock/admissibility.hpp"
#include "sphereflock/diagnostics.hpp"
#include "sphereflock/integrator.hpp"
#include "sphereflock/run.hpp"

namespace sphereflock {

/// Column order of the frames CSV.
const std::vector<std::string>& frame_columns();

/// "t,E,E_K,...,X_max" without a trailing newline.
std::string csv_header();
/// One row, every value printed with %.17g.
std::string csv_row(const DiagnosticsFrame& f);

void write_frames_csv(std::ostream& out, const Trajectory& traj);

/// Per-agent dump: t,agent,x0,x1,x2,v0,v1,v2 for every frame.
void write_full_state_csv(std::ostream& out, const Trajectory& traj);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws ConfigError when the column is absent.
  std::size_t index(const std::string& column) const;
  std::vector<TimeValue> series(const std::string& t_column,
                                const std::string& value_column) const;
};

/// Reads a numeric CSV with a header row. Throws ConfigError on malformed
/// input.
CsvTable read_csv(std::istream& in);

/// JSON documents, pretty-printed with two-space indentation. Doubles are
/// written in shortest round-trip form.
std::string thresholds_json(const Thresholds& t);
std::string admissibility_json(const AdmissibilityReport& r);
std::string summary_json(const RunSummary& s);
std::string fit_json(const DecayFit& fit, std::pair<double, double> window);

}  // namespace sphereflock
