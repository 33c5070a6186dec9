#include "sphereflock/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sphereflock {
namespace {

Ensemble advance(const Ensemble& e, double h, const EnsembleRate& k) {
  Ensemble out = e;
  for (std::size_t i = 0; i < e.size(); ++i) {
    out.x[i] += h * k.dx[i];
    out.v[i] += h * k.dv[i];
  }
  return out;
}

// With `dissipated` set, also integrates dissipation_rate as an extra state
// component using the same stages and weights.
StepResult rk4_core(const Ensemble& e, double dt, const ModelParams& p,
                    bool project, unsigned threads, double* dissipated) {
  const EnsembleRate k1 = rhs(e, p, threads);
  const Ensemble s2 = advance(e, 0.5 * dt, k1);
  const EnsembleRate k2 = rhs(s2, p, threads);
  const Ensemble s3 = advance(e, 0.5 * dt, k2);
  const EnsembleRate k3 = rhs(s3, p, threads);
  const Ensemble s4 = advance(e, dt, k3);
  const EnsembleRate k4 = rhs(s4, p, threads);

  StepResult out{e, {}};
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    out.state.x[i] += w * (k1.dx[i] + 2.0 * (k2.dx[i] + k3.dx[i]) + k4.dx[i]);
    out.state.v[i] += w * (k1.dv[i] + 2.0 * (k2.dv[i] + k3.dv[i]) + k4.dv[i]);
  }
  if (dissipated) {
    *dissipated = w * (dissipation_rate(e, p) +
                       2.0 * (dissipation_rate(s2, p) + dissipation_rate(s3, p)) +
                       dissipation_rate(s4, p));
  }
  out.drift = constraint_drift(out.state);
  if (project) out.state = project_ensemble(std::move(out.state));
  return out;
}

}  // namespace

void check_sim_config(const SimConfig& c) {
  if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
  if (c.frame_stride < 1) throw ConfigError("frame_stride must be >= 1");
}

StepResult rk4_step(const Ensemble& e, double dt, const ModelParams& p,
                    bool project, unsigned threads) {
  return rk4_core(e, dt, p, project, threads, nullptr);
}

Trajectory simulate(const Ensemble& e0, const ModelParams& p,
                    const SimConfig& c) {
  check_sim_config(c);

  auto traj = std::make_shared<Trajectory>();
  traj->dt = c.dt;
  traj->frame_stride = c.frame_stride;
  const auto steps = static_cast<std::size_t>(std::llround(c.t_end / c.dt));

  Ensemble state = e0;
  double t = 0.0;
  double energy_now = energy(state, p.sigma).total;
  double dissipated = 0.0;
  ConstraintDrift window_drift = constraint_drift(state);

  auto record = [&](std::size_t step) {
    Frame f;
    f.t = t;
    f.state = state;
    f.diag = diagnose(t, state, p.sigma, window_drift);
    f.dissipated = dissipated;
    traj->frames.push_back(std::move(f));
    traj->steps = step;
    window_drift = {};
  };

  record(0);
  for (std::size_t step = 1; step <= steps; ++step) {
    StepResult next;
    double energy_next = 0.0;
    double step_dissipated = 0.0;
    try {
      next = rk4_core(state, c.dt, p, c.projection, c.threads, &step_dissipated);
      energy_next = energy(next.state, p.sigma).total;
    } catch (const AntipodalPair& err) {
      std::ostringstream msg;
      msg << "antipodal pair at t = " << t << ": " << err.what();
      throw SimulationAborted(msg.str(), t, traj);
    }
    state = std::move(next.state);
    t = static_cast<double>(step) * c.dt;

    window_drift = window_drift.max(next.drift);
    traj->max_step_drift = traj->max_step_drift.max(next.drift);

    const double increase = energy_next - energy_now;
    if (increase > 0.0) {
      traj->max_energy_increase = std::max(traj->max_energy_increase, increase);
      traj->max_relative_energy_increase =
          std::max(traj->max_relative_energy_increase,
                   increase / std::max(1.0, energy_now));
    }
    dissipated += step_dissipated;
    energy_now = energy_next;

    if (step % c.frame_stride == 0 || step == steps) record(step);
  }
  traj->steps = steps;
  return std::move(*traj);
}

}  // namespace sphereflock
