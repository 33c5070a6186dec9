#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "sphereflock/admissibility.hpp"
#include "sphereflock/diagnostics.hpp"
#include "sphereflock/integrator.hpp"
#include "sphereflock/scenario.hpp"

namespace sphereflock {

/// [t_end / 8, t_end]; for t_end = 80 this is [10, 80].
std::pair<double, double> default_fit_window(double t_end);

/// Decay fit of D_x over the recorded frames.
DecayFit fit_trajectory(const Trajectory& traj,
                        std::pair<double, double> window);

struct RunStats {
  std::size_t steps = 0;
  std::size_t frames = 0;
  unsigned threads = 1;
  double wall_seconds = 0.0;
  ConstraintDrift max_step_drift;
  double max_energy_increase = 0.0;
  double max_relative_energy_increase = 0.0;
};

struct RunSummary {
  std::string label;
  std::string kernel;
  double sigma = 0.0;
  /// Empty when the thresholds are undefined (sigma = 0 or a kernel outside
  /// the admissibility hypotheses); admissibility_error then says why.
  std::optional<AdmissibilityReport> admissibility;
  std::string admissibility_error;
  DiagnosticsFrame initial;
  DiagnosticsFrame final;
  std::pair<double, double> fit_window{0.0, 0.0};
  /// Empty when D_x cannot be fitted (too few frames or D_x = 0);
  /// fit_error then says why.
  std::optional<DecayFit> fit;
  std::string fit_error;
  ScenarioAdjustment adjustment;
  RunStats stats;
};

/// Collects the summary of a completed run.
RunSummary summarize(const Scenario& s, const Trajectory& traj,
                     double wall_seconds);

}  // namespace sphereflock
