#include "sphereflock/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sphereflock/errors.hpp"

namespace sphereflock {

std::vector<Vec3> paper_printed_positions() {
  return {
      {-0.3903, -0.4756, 0.7883}, {-0.5800, -0.7067, 0.4052},
      {-0.6746, -0.2998, 0.6746}, {-0.4472, 0.0000, 0.8944},
      {-0.1249, 0.2084, 0.9700},  {-0.6236, 0.6236, 0.4714},
  };
}

std::vector<Vec3> paper_printed_velocities() {
  return {
      {-0.4707, 0.1259, -0.1571}, {-0.0986, 0.4355, 0.6185},
      {0.1892, 0.1666, 0.2631},   {0.4605, 0.5046, 0.2302},
      {-0.4914, 0.7722, -0.2292}, {-0.0148, 0.1342, -0.1971},
  };
}

namespace {

Ensemble project_with_report(std::vector<Vec3> x, std::vector<Vec3> v,
                             ScenarioAdjustment& adj) {
  if (x.size() != v.size() || x.empty()) {
    throw InvalidEnsemble("need matching, nonempty position and velocity lists");
  }
  Ensemble e{std::move(x), std::move(v)};
  for (std::size_t i = 0; i < e.size(); ++i) {
    const UnitVector u = project_to_sphere(e.x[i]);
    adj.max_radial = std::max(adj.max_radial, std::abs(e.x[i].norm() - 1.0));
    adj.max_tangency = std::max(adj.max_tangency, std::abs(e.v[i].dot(u.vec())));
    e.x[i] = u.vec();
    e.v[i] = project_to_tangent(u, e.v[i]).vec();
  }
  return e;
}

}  // namespace

Scenario paper_scenario(double sigma) {
  if (!(sigma > 0.0)) throw OutOfRange("paper scenario needs sigma > 0");
  Scenario s;
  s.ensemble = project_with_report(paper_printed_positions(),
                                   paper_printed_velocities(), s.adjustment);
  s.params = ModelParams{paper_kernel(), sigma};
  std::ostringstream label;
  label << "paper-sigma" << sigma;
  s.label = label.str();
  return s;
}

Ensemble ensemble_from_raw(std::vector<Vec3> x, std::vector<Vec3> v,
                           ScenarioAdjustment* adjustment) {
  ScenarioAdjustment adj;
  Ensemble e = project_with_report(std::move(x), std::move(v), adj);
  if (adj.max_tangency > 1e-3) {
    std::ostringstream msg;
    msg << "velocity tangency violated by " << adj.max_tangency
        << " (> 1e-3); refusing to project";
    throw InvalidEnsemble(msg.str());
  }
  if (adjustment) *adjustment = adj;
  return e;
}

Ensemble random_ensemble(std::mt19937_64& rng, std::size_t n,
                         double pos_spread, double vel_scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto gaussian3 = [&] {
    const double a = normal(rng);
    const double b = normal(rng);
    const double c = normal(rng);
    return Vec3(a, b, c);
  };

  Vec3 center;
  do {
    center = gaussian3();
  } while (center.norm() < 1e-12);
  center.normalize();

  // Orthonormal frame (center, u, w).
  const Vec3 helper = std::abs(center.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 u = center.cross(helper).normalized();
  const Vec3 w = center.cross(u);

  const double cos_spread = std::cos(pos_spread);
  Ensemble e{std::vector<Vec3>(n), std::vector<Vec3>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    // cos(theta) uniform on [cos(spread), 1] is uniform by area in the cap.
    const double cos_theta = 1.0 - unit(rng) * (1.0 - cos_spread);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const Vec3 x = cos_theta * center +
                   sin_theta * (std::cos(phi) * u + std::sin(phi) * w);
    const UnitVector xu = project_to_sphere(x);
    e.x[i] = xu.vec();
    e.v[i] = vel_scale * project_to_tangent(xu, gaussian3()).vec();
  }
  return e;
}

Scenario random_scenario(std::uint64_t seed, std::size_t n, double pos_spread,
                         double vel_scale, const ModelParams& p) {
  if (n < 1) throw OutOfRange("random scenario needs n >= 1");
  std::mt19937_64 rng(seed);
  Scenario s;
  s.ensemble = random_ensemble(rng, n, pos_spread, vel_scale);
  s.params = p;
  s.sim.seed = seed;
  s.label = "random-" + std::to_string(seed);
  return s;
}

}  // namespace sphereflock
