#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sphereflock/dynamics.hpp"

namespace sphereflock {

/// max_i | ||x_i|| - 1 | and max_i |<v_i, x_i>|.
struct ConstraintDrift {
  double radial = 0.0;
  double tangency = 0.0;

  ConstraintDrift max(const ConstraintDrift& other) const {
    return {radial > other.radial ? radial : other.radial,
            tangency > other.tangency ? tangency : other.tangency};
  }
};

ConstraintDrift constraint_drift(const Ensemble& e);

struct Energy {
  double total = 0.0;
  double kinetic = 0.0;
  double config = 0.0;
};

/// E_K = (1/N) sum ||v_k||^2, E_C = sigma / (2 N^2) sum_{k,l} ||x_k - x_l||^2.
Energy energy(const Ensemble& e, double sigma);

/// sum_{i,j} psi_ij / N^2 ||R_{x_j -> x_i} v_j - v_i||^2.
double dissipation_rate(const Ensemble& e, const ModelParams& p);

/// dE/dt along the flow, by the chain rule through rhs():
///   (2/N) sum <dv_i, v_i> + (sigma/N^2) sum_{k,l} <x_k - x_l, v_k - v_l>.
double energy_rate(const Ensemble& e, const ModelParams& p);

/// |energy_rate + dissipation_rate|; zero up to rounding on valid ensembles.
double dissipation_residual(const Ensemble& e, const ModelParams& p);

struct Diameters {
  double d_x = 0.0;
  double d_v = 0.0;
  double v_max = 0.0;
};

Diameters diameters(const Ensemble& e);

struct FlockingMetrics {
  /// max_{i,j} ||x_i + x_j|| ||R_{x_j -> x_i} v_j - v_i||.
  double flock_align = 0.0;
  /// min_{i,j} ||x_i + x_j||.
  double antipode_margin = 2.0;
  /// Set when some pair lies within the antipodal tolerance; that pair's
  /// alignment product is reported as 0.
  bool antipodal_pair = false;
};

FlockingMetrics flocking_metrics(const Ensemble& e);

/// max_{i,j} ||X^{ij}||.
double max_pair_functional(const Ensemble& e);

/// One row of the time series.
struct DiagnosticsFrame {
  double t = 0.0;
  double e_total = 0.0;
  double e_kinetic = 0.0;
  double e_config = 0.0;
  double d_x = 0.0;
  double d_v = 0.0;
  double v_max = 0.0;
  double flock_align = 0.0;
  double antipode_margin = 0.0;
  ConstraintDrift drift;
  double x_max = 0.0;
};

DiagnosticsFrame diagnose(double t, const Ensemble& e, double sigma,
                          const ConstraintDrift& drift);

struct Trajectory;

struct VelocityBoundReport {
  /// max over frames of V^2(t) minus the bound; <= 0 when the bound holds.
  double worst_violation = 0.0;
  std::size_t worst_frame = 0;
  /// The lower bound psi_ij >= psi_m does not hold along the trajectory, so
  /// the bound was not evaluated.
  bool vacuous = false;
};

/// Checks the maximal-speed bound
///   V^2(t) <= e^{-psi_m t/2} V^2(0)
///             + (1 - e^{-psi_m t/2}) (2 sup E_K + 4 sigma^2 / psi_m^2 sup D_x^2)
/// with running suprema over the recorded frames.
VelocityBoundReport velocity_bound_check(const Trajectory& traj,
                                         const ModelParams& p, double psi_m);

/// psi(max_t D_x(t)): the smallest communication rate seen along `traj`.
double trajectory_psi_min(const Trajectory& traj, const Kernel& k);

struct TimeValue {
  double t = 0.0;
  double value = 0.0;
};

struct DecayFit {
  /// Negated slope of log(value) against t.
  double rate = 0.0;
  double r_squared = 0.0;
  /// False when the series is constant over the window (r^2 undefined; then
  /// r_squared is reported as 0).
  bool r_squared_defined = true;
  std::size_t samples = 0;
};

/// Least-squares fit of log(value) = a - rate * t over samples with
/// t in [window.first, window.second]. Throws InsufficientSamples for fewer
/// than 10 samples and NonPositiveValue for a value <= 0 inside the window.
DecayFit fit_decay_rate(std::span<const TimeValue> series,
                        std::pair<double, double> window);

}  // namespace sphereflock
