#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "sphereflock/diagnostics.hpp"
#include "sphereflock/dynamics.hpp"
#include "sphereflock/errors.hpp"

namespace sphereflock {

struct SimConfig {
  double dt = 1e-3;
  double t_end = 80.0;
  /// Renormalize positions and re-project velocities after every step.
  bool projection = true;
  std::size_t frame_stride = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigError unless dt > 0, t_end >= 0 and frame_stride >= 1.
void check_sim_config(const SimConfig& c);

struct StepResult {
  Ensemble state;
  /// Constraint drift of the raw Runge-Kutta update, before any projection.
  ConstraintDrift drift;
};

/// One classical RK4 step (four rhs evaluations). With `project` the result
/// is pulled back onto the sphere and tangent planes afterwards.
StepResult rk4_step(const Ensemble& e, double dt, const ModelParams& p,
                    bool project = true, unsigned threads = 1);

struct Frame {
  double t = 0.0;
  Ensemble state;
  /// diag.drift is the largest pre-projection drift over the steps since the
  /// previous frame (the initial drift for frame 0).
  DiagnosticsFrame diag;
  /// Integral of dissipation_rate over [0, t], carried as an extra component
  /// of the Runge-Kutta state (same stages and weights as the flow).
  double dissipated = 0.0;
};

struct Trajectory {
  std::vector<Frame> frames;
  double dt = 0.0;
  std::size_t frame_stride = 1;
  std::size_t steps = 0;
  /// Largest pre-projection drift over every step.
  ConstraintDrift max_step_drift;
  /// Largest single-step increase of E (0 if E never increased).
  double max_energy_increase = 0.0;
  /// Largest single-step increase of E relative to max(1, E).
  double max_relative_energy_increase = 0.0;
};

/// Raised when a step meets an antipodal pair. Carries the frames recorded
/// before the failure.
class SimulationAborted : public AntipodalPair {
 public:
  SimulationAborted(const std::string& what, double t,
                    std::shared_ptr<const Trajectory> partial)
      : AntipodalPair(what), t_(t), partial_(std::move(partial)) {}

  double time() const { return t_; }
  const Trajectory& partial() const { return *partial_; }

 private:
  double t_;
  std::shared_ptr<const Trajectory> partial_;
};

/// Integrates from t = 0 to t_end with fixed step dt, recording a frame
/// every frame_stride steps plus the final state. Frame times are
/// step * dt. Deterministic for fixed inputs.
Trajectory simulate(const Ensemble& e0, const ModelParams& p,
                    const SimConfig& c);

}  // namespace sphereflock
