#include "sphereflock/run.hpp"

#include <vector>

#include "sphereflock/errors.hpp"

namespace sphereflock {

std::pair<double, double> default_fit_window(double t_end) {
  return {t_end / 8.0, t_end};
}

DecayFit fit_trajectory(const Trajectory& traj,
                        std::pair<double, double> window) {
  std::vector<TimeValue> series;
  series.reserve(traj.frames.size());
  for (const Frame& f : traj.frames) series.push_back({f.t, f.diag.d_x});
  return fit_decay_rate(series, window);
}

RunSummary summarize(const Scenario& s, const Trajectory& traj,
                     double wall_seconds) {
  RunSummary r;
  r.label = s.label;
  r.kernel = s.params.kernel.name();
  r.sigma = s.params.sigma;
  try {
    r.admissibility = check_initial(s.ensemble, s.params);
  } catch (const Error& e) {
    r.admissibility_error = e.what();
  }
  if (!traj.frames.empty()) {
    r.initial = traj.frames.front().diag;
    r.final = traj.frames.back().diag;
  }
  r.fit_window = default_fit_window(traj.frames.empty() ? 0.0 : traj.frames.back().t);
  try {
    r.fit = fit_trajectory(traj, r.fit_window);
  } catch (const Error& e) {
    r.fit_error = e.what();
  }
  r.adjustment = s.adjustment;
  r.stats.steps = traj.steps;
  r.stats.frames = traj.frames.size();
  r.stats.threads = s.sim.threads;
  r.stats.wall_seconds = wall_seconds;
  r.stats.max_step_drift = traj.max_step_drift;
  r.stats.max_energy_increase = traj.max_energy_increase;
  r.stats.max_relative_energy_increase = traj.max_relative_energy_increase;
  return r;
}

}  // namespace sphereflock
