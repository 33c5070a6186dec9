#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sphereflock/dynamics.hpp"
#include "sphereflock/integrator.hpp"

namespace sphereflock {

/// How far raw input data had to be moved onto the constraint set.
struct ScenarioAdjustment {
  /// max_i | ||x_i|| - 1 | before renormalization.
  double max_radial = 0.0;
  /// max_i |<v_i, x_i / ||x_i||>| before tangent projection.
  double max_tangency = 0.0;
};

struct Scenario {
  Ensemble ensemble;
  ModelParams params;
  SimConfig sim;
  std::string label;
  ScenarioAdjustment adjustment;
};

/// Six-agent initial data as printed (four decimals, not exactly on the
/// sphere or tangent).
std::vector<Vec3> paper_printed_positions();
std::vector<Vec3> paper_printed_velocities();

/// The six-agent scenario with the built-in kernel and bonding rate `sigma`.
/// Printed positions are renormalized and velocities projected; the
/// adjustment magnitudes are recorded.
Scenario paper_scenario(double sigma);

/// Renormalizes and projects raw data. Throws InvalidEnsemble if a velocity
/// violates tangency by more than 1e-3 or a position is zero.
Ensemble ensemble_from_raw(std::vector<Vec3> x, std::vector<Vec3> v,
                           ScenarioAdjustment* adjustment = nullptr);

/// Positions uniform (by area) in a geodesic cap of angular radius
/// `pos_spread` about a uniformly random center; velocities are `vel_scale`
/// times tangent-projected standard normal vectors.
Ensemble random_ensemble(std::mt19937_64& rng, std::size_t n,
                         double pos_spread, double vel_scale);

/// Bit-reproducible per seed on a given standard library.
Scenario random_scenario(std::uint64_t seed, std::size_t n, double pos_spread,
                         double vel_scale, const ModelParams& p);

}  // namespace sphereflock
