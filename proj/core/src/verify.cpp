#include "sphereflock/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sphereflock/admissibility.hpp"
#include "sphereflock/config.hpp"
#include "sphereflock/diagnostics.hpp"
#include "sphereflock/dynamics.hpp"
#include "sphereflock/errors.hpp"
#include "sphereflock/geometry.hpp"
#include "sphereflock/integrator.hpp"
#include "sphereflock/scenario.hpp"

namespace sphereflock {
namespace {

std::string describe(const char* what, double value, double limit) {
  std::ostringstream out;
  out.precision(3);
  out << what << " " << value << " (limit " << limit << ")";
  return out.str();
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec3 z;
  do {
    z = Vec3(normal(rng), normal(rng), normal(rng));
  } while (z.norm() < 1e-6);
  return z.normalized();
}

Ensemble random_valid(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> count(2, 8);
  std::uniform_real_distribution<double> spread(0.05, 1.5);
  std::uniform_real_distribution<double> speed(0.05, 1.0);
  const std::size_t n = count(rng);
  const double s = spread(rng);
  const double v = speed(rng);
  return random_ensemble(rng, n, s, v);
}

CheckResult rotation_identities(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 a = random_unit(rng);
    const Vec3 b = random_unit(rng);
    if ((a + b).norm() < 1e-6) continue;
    const UnitVector z1 = project_to_sphere(a);
    const UnitVector z2 = project_to_sphere(b);
    const Mat3 r = rotation_matrix(z1, z2).matrix();
    const Mat3 back = rotation_matrix(z2, z1).matrix();
    const double c = z1.vec().dot(z2.vec());
    const Vec3 axis = z1.vec().cross(z2.vec());
    worst = std::max({worst,
                      (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(),
                      (r * z1.vec() - z2.vec()).cwiseAbs().maxCoeff(),
                      (r * z2.vec() - (2.0 * c * z2.vec() - z1.vec()))
                          .cwiseAbs()
                          .maxCoeff(),
                      (r * axis - axis).cwiseAbs().maxCoeff(),
                      (back - r.transpose()).cwiseAbs().maxCoeff()});
  }
  return {"rotation identities", worst <= 1e-12,
          describe("max deviation", worst, 1e-12)};
}

CheckResult equator_transport() {
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double t = -std::numbers::pi + 2.0 * std::numbers::pi * (k + 0.5) / 100.0;
    const UnitVector to =
        project_to_sphere(Vec3(std::cos(t), std::sin(t), 0.0));
    const Mat3 r = rotation_matrix(UnitVector::e1(), to).matrix();
    worst = std::max({worst,
                      (r * Vec3::UnitY() - Vec3(-std::sin(t), std::cos(t), 0.0))
                          .cwiseAbs()
                          .maxCoeff(),
                      (r * Vec3::UnitZ() - Vec3::UnitZ()).cwiseAbs().maxCoeff()});
  }
  return {"equator transport", worst <= 1e-12,
          describe("max deviation", worst, 1e-12)};
}

CheckResult linearization(std::mt19937_64& rng, const ModelParams& p) {
  const Mat3 a = coefficient_matrix(p.kernel.psi0(), p.sigma);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Ensemble e = random_valid(rng);
    const EnsembleRate rate = rhs(e, p);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = 0; j < e.size(); ++j) {
        const Vec3 dx = e.x[i] - e.x[j];
        const Vec3 dv = e.v[i] - e.v[j];
        const Vec3 ddv = rate.dv[i] - rate.dv[j];
        const PairFunctional x = pair_functional(e, i, j);
        const Vec3 lhs(2.0 * x.x2, x.x3 + ddv.dot(dx), 2.0 * ddv.dot(dv));
        const Vec3 rhs_value = a * x.vec() + inhomogeneous_term(e, i, j, p).vec();
        for (int c = 0; c < 3; ++c) {
          const double scale =
              std::max({1.0, std::abs(lhs[c]), std::abs(rhs_value[c])});
          worst = std::max(worst, std::abs(lhs[c] - rhs_value[c]) / scale);
        }
      }
    }
  }
  return {"pair functional linearization", worst <= 1e-9,
          describe("max relative deviation", worst, 1e-9)};
}

CheckResult dissipation(std::mt19937_64& rng, const ModelParams& p) {
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Ensemble e = random_valid(rng);
    const double rate = energy_rate(e, p);
    worst = std::max(worst, std::abs(rate + dissipation_rate(e, p)) /
                                std::max(1.0, std::abs(rate)));
  }
  return {"energy dissipation identity", worst <= 1e-10,
          describe("max relative residual", worst, 1e-10)};
}

CheckResult threshold_roots(const Kernel& k) {
  double worst = 0.0;
  int bad_roots = 0;
  for (double sigma : {0.5, 1.0, 2.0, 5.0}) {
    const Thresholds t = thresholds(k, sigma);
    const XmRoot root = solve_x_m(k, sigma, t.mu, t.c_const);
    worst = std::max(worst, t.x_m_residual);
    if (count_x_m_sign_changes(k, root.coefficient, 4000) != 1) ++bad_roots;
  }
  std::ostringstream detail;
  detail << describe("max residual", worst, 1e-12) << ", " << bad_roots
         << " sigma value(s) without a unique sign change";
  return {"X_M fixed point", worst <= 1e-12 && bad_roots == 0, detail.str()};
}

CheckResult thread_independence(std::mt19937_64& rng, const ModelParams& p,
                                unsigned threads) {
  const Ensemble e = random_ensemble(rng, 64, 1.0, 0.5);
  const EnsembleRate serial = rhs(e, p, 1);
  const EnsembleRate parallel = rhs(e, p, std::max(threads, 4u));
  const bool same = serial.dx == parallel.dx && serial.dv == parallel.dv;
  return {"rhs independent of thread count", same,
          same ? "bitwise identical" : "results differ"};
}

CheckResult short_run(unsigned threads) {
  Scenario s = paper_scenario(1.0);
  SimConfig c;
  c.t_end = 1.0;
  c.threads = threads;
  const Trajectory traj = simulate(s.ensemble, s.params, c);
  const bool ok = traj.max_step_drift.radial <= 1e-10 &&
                  traj.max_step_drift.tangency <= 1e-9 &&
                  traj.max_relative_energy_increase <= 1e-8;
  std::ostringstream detail;
  detail.precision(3);
  detail << "drift radial " << traj.max_step_drift.radial << ", tangency "
         << traj.max_step_drift.tangency << ", energy increase "
         << traj.max_relative_energy_increase;
  return {"constrained integration", ok, detail.str()};
}

CheckResult config_round_trip(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Config> configs;
  for (const auto& name : preset_names()) configs.push_back(preset_config(name));
  Config c;
  c.kernel = {"exponential", {{"scale", u(rng) + 2.0}, {"rate", u(rng) + 2.0}}};
  c.sigma = 0.1 + std::abs(u(rng));
  c.sim.dt = 1e-3 * (1.0 + std::abs(u(rng)));
  c.sim.projection = false;
  c.scenario.type = "explicit";
  c.scenario.x = {Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng))};
  c.scenario.v = {Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng))};
  configs.push_back(c);
  int failures = 0;
  for (const Config& config : configs) {
    if (!(parse_config(emit_config(config)) == config)) ++failures;
  }
  return {"config round trip", failures == 0,
          std::to_string(configs.size() - failures) + "/" +
              std::to_string(configs.size()) + " identical"};
}

template <typename F>
CheckResult guarded(const char* name, F&& check) {
  try {
    return check();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed,
                                             unsigned threads) {
  std::mt19937_64 rng(seed);
  const ModelParams p{paper_kernel(), 1.0};
  std::vector<CheckResult> out;
  out.push_back(guarded("rotation identities", [&] { return rotation_identities(rng); }));
  out.push_back(guarded("equator transport", [&] { return equator_transport(); }));
  out.push_back(guarded("pair functional linearization",
                        [&] { return linearization(rng, p); }));
  out.push_back(guarded("energy dissipation identity",
                        [&] { return dissipation(rng, p); }));
  out.push_back(guarded("kernel hypotheses", [&] {
    const KernelValidation v = validate_kernel(p.kernel, 10000);
    return CheckResult{"kernel hypotheses", v.ok(),
                       v.ok() ? "paper kernel passes" : "paper kernel fails"};
  }));
  out.push_back(guarded("X_M fixed point", [&] { return threshold_roots(p.kernel); }));
  out.push_back(guarded("rhs independent of thread count",
                        [&] { return thread_independence(rng, p, threads); }));
  out.push_back(guarded("constrained integration", [&] { return short_run(threads); }));
  out.push_back(guarded("config round trip", [&] { return config_round_trip(rng); }));
  return out;
}

}  // namespace sphereflock
