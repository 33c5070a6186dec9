// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../unit/support.hpp"
#include "sphereflock/admissibility.hpp"
#include "sphereflock/diagnostics.hpp"
#include "sphereflock/dynamics.hpp"
#include "sphereflock/geometry.hpp"
#include "sphereflock/integrator.hpp"
#include "sphereflock/run.hpp"
#include "sphereflock/scenario.hpp"

namespace sf = sphereflock;
using sf::Ensemble;
using sf::Mat3;
using sf::Vec3;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const char* name, bool passed, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", passed ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!passed) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

void rotation_identities() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  int pairs = 0;
  while (pairs < 10000) {
    const Vec3 a = sf::testing::random_unit(rng);
    const Vec3 b = sf::testing::random_unit(rng);
    if ((a + b).norm() <= sf::kAntipodalTolerance) continue;
    ++pairs;
    const auto z1 = sf::UnitVector::from(a);
    const auto z2 = sf::UnitVector::from(b);
    const Mat3 r = sf::rotation_matrix(z1, z2).matrix();
    const double c = a.dot(b);
    const Vec3 axis = a.cross(b);
    worst = std::max({worst,
                      (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(),
                      (r * a - b).cwiseAbs().maxCoeff(),
                      (r * b - (2 * c * b - a)).cwiseAbs().maxCoeff(),
                      (r * axis - axis).cwiseAbs().maxCoeff(),
                      (sf::rotation_matrix(z2, z1).matrix() - r.transpose())
                          .cwiseAbs()
                          .maxCoeff()});
  }
  double equator = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double t = -std::numbers::pi + 2 * std::numbers::pi * (k + 0.5) / 100;
    const Mat3 r = sf::rotation_matrix(sf::UnitVector::e1(),
                                       sf::project_to_sphere(Vec3(std::cos(t), std::sin(t), 0)))
                       .matrix();
    equator = std::max({equator,
                        (r * Vec3::UnitY() - Vec3(-std::sin(t), std::cos(t), 0))
                            .cwiseAbs()
                            .maxCoeff(),
                        (r * Vec3::UnitZ() - Vec3::UnitZ()).cwiseAbs().maxCoeff()});
  }
  const double elapsed = seconds_since(start);
  report(1, "rotation-operator identities",
         worst <= 1e-12 && equator <= 1e-12 && elapsed < 1.0,
         fmt("10000 pairs max dev %.2e, equator max dev %.2e, %.3f s", worst, equator,
             elapsed));
}

void linearization_identity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1002);
  const sf::ModelParams p{sf::paper_kernel(), 1.0};
  const Mat3 a = sf::coefficient_matrix(p.kernel.psi0(), p.sigma);
  double worst = 0.0;
  long pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Ensemble e = sf::testing::random_valid_ensemble(rng, 2 + trial % 7);
    const sf::EnsembleRate r = sf::rhs(e, p);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = 0; j < e.size(); ++j) {
        const Vec3 dx = e.x[i] - e.x[j];
        const Vec3 dv = e.v[i] - e.v[j];
        const Vec3 ddv = r.dv[i] - r.dv[j];
        const Vec3 lhs(2 * dv.dot(dx), dv.squaredNorm() + ddv.dot(dx), 2 * ddv.dot(dv));
        const Vec3 rhs = a * sf::pair_functional(e, i, j).vec() +
                         sf::inhomogeneous_term(e, i, j, p).vec();
        for (int c = 0; c < 3; ++c) {
          const double scale = std::max({1.0, std::abs(lhs[c]), std::abs(rhs[c])});
          worst = std::max(worst, std::abs(lhs[c] - rhs[c]) / scale);
        }
        ++pairs;
      }
    }
  }
  const double elapsed = seconds_since(start);
  report(2, "linearization identity", worst <= 1e-9 && elapsed < 10.0,
         fmt("1000 ensembles, %ld ordered pairs, max rel dev %.2e, %.2f s", pairs, worst,
             elapsed));
}

void dissipation_identity(const sf::Trajectory& traj) {
  std::mt19937_64 rng(1003);
  const sf::ModelParams p{sf::paper_kernel(), 1.0};
  double worst_identity = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Ensemble e = sf::testing::random_valid_ensemble(rng, 2 + trial % 7);
    const double rate = sf::energy_rate(e, p);
    worst_identity = std::max(worst_identity,
                              sf::dissipation_residual(e, p) / std::max(1.0, std::abs(rate)));
  }
  double worst_increase = -INFINITY;
  double worst_slack = -INFINITY;
  const double e0 = traj.frames.front().diag.e_total;
  for (std::size_t n = 0; n < traj.frames.size(); ++n) {
    const auto& f = traj.frames[n];
    if (n > 0) {
      worst_increase = std::max(worst_increase, f.diag.e_total - traj.frames[n - 1].diag.e_total);
    }
    worst_slack = std::max(worst_slack, f.diag.e_total + f.dissipated - e0);
  }
  report(3, "energy dissipation",
         worst_identity <= 1e-10 && worst_increase <= 1e-8 && worst_slack <= 1e-6,
         fmt("identity max rel residual %.2e; frame-to-frame max dE %.2e; "
             "E(t) + int D - E(0) max %.2e",
             worst_identity, worst_increase, worst_slack));
}

void constraint_preservation(const sf::Trajectory& traj) {
  const auto& d = traj.max_step_drift;
  report(4, "constraint preservation", d.radial <= 1e-10 && d.tangency <= 1e-9,
         fmt("%zu steps, max pre-projection drift radial %.2e, tangency %.2e", traj.steps,
             d.radial, d.tangency));
}

void integrator_order() {
  const sf::ModelParams p{sf::paper_kernel(), 1.0};
  const Vec3 x0 = Vec3(1, 2, 2) / 3.0;
  const Vec3 v0 = 1.3 * Vec3(2, -1, 0) / std::sqrt(5.0);
  const double t_end = 2.0;
  const double w = v0.norm();
  const Vec3 x_exact = std::cos(w * t_end) * x0 + std::sin(w * t_end) * v0 / w;
  const Vec3 v_exact = -w * std::sin(w * t_end) * x0 + std::cos(w * t_end) * v0;
  const auto error = [&](double dt) {
    sf::SimConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.projection = false;
    const Ensemble end = sf::simulate(Ensemble{{x0}, {v0}}, p, c).frames.back().state;
    return std::max((end.x[0] - x_exact).norm(), (end.v[0] - v_exact).norm());
  };
  bool ok = true;
  std::string detail = "ratios";
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    const double ratio = error(dt) / error(dt / 2);
    ok = ok && ratio >= 12 && ratio <= 20;
    detail += fmt(" dt=%g: %.2f", dt, ratio);
  }
  report(5, "integrator order", ok, detail);
}

void rendezvous(const sf::Trajectory& traj, const sf::Thresholds& t) {
  const double dx0 = traj.frames.front().diag.d_x;
  const double dx_end = traj.frames.back().diag.d_x;
  const sf::DecayFit fit = sf::fit_trajectory(traj, {10.0, 80.0});
  report(6, "exponential rendezvous (sigma=1)",
         dx_end <= 0.1 * dx0 && fit.r_squared >= 0.99,
         fmt("D_x(0)=%.4f D_x(80)=%.3e ratio %.2e; fit on [10,80]: rate %.5f r^2 %.5f; "
             "delta=mu/2 %.5f",
             dx0, dx_end, dx_end / dx0, fit.rate, fit.r_squared, t.delta));
}

void inadmissible_sigma_five() {
  const sf::Scenario s = sf::paper_scenario(5.0);
  const sf::AdmissibilityReport r = sf::check_initial(s.ensemble, s.params);
  const double limit = r.thresholds.mu / (2 * 5.0);
  bool completed = true;
  sf::DecayFit fit;
  try {
    const sf::Trajectory traj = sf::simulate(s.ensemble, s.params, s.sim);
    fit = sf::fit_trajectory(traj, {10.0, 80.0});
  } catch (const sf::Error&) {
    completed = false;
  }
  report(7, "inadmissibility at sigma=5",
         !r.admissible && r.x_initial >= 10 * limit && completed,
         fmt("admissible=%s X(0)=%.4f mu/(2 sigma)=%.4f margin %.1fx; run %s, "
             "fit rate on [10,80] %.5f (r^2 %.5f)",
             r.admissible ? "true" : "false", r.x_initial, limit, r.x_initial / limit,
             completed ? "completed" : "aborted", fit.rate, fit.r_squared));
}

void theorem_on_constructed_data() {
  const auto start = Clock::now();
  const sf::ModelParams p{sf::paper_kernel(), 1.0};
  const sf::Thresholds t = sf::thresholds(p.kernel, p.sigma);
  int admissible = 0;
  int envelope_ok = 0;
  double worst_v = 0.0;
  double worst_x = 0.0;
  double worst_envelope = -INFINITY;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const sf::Scenario s =
        sf::random_scenario(seed, 6, std::numbers::pi / 64, 0.01, p);
    const sf::AdmissibilityReport r = sf::check_initial(s.ensemble, p);
    if (r.admissible) ++admissible;
    worst_v = std::max(worst_v, r.v_initial / t.v0);
    worst_x = std::max(worst_x, r.x_initial / r.bound_x);
    const sf::Trajectory traj = sf::simulate(s.ensemble, p, s.sim);
    const double dx0 = traj.frames.front().diag.d_x;
    double seed_worst = -INFINITY;
    for (const auto& f : traj.frames) {
      seed_worst = std::max(seed_worst, f.diag.d_x - 1.05 * dx0 * std::exp(-t.delta * f.t));
    }
    worst_envelope = std::max(worst_envelope, seed_worst);
    if (seed_worst <= 0) ++envelope_ok;
  }
  const double elapsed = seconds_since(start);
  report(8, "rendezvous guarantee on constructed data",
         admissible == 20 && envelope_ok == 20 && elapsed < 300,
         fmt("%d/20 seeds admissible (worst V(0)/V0 %.2e, X(0)/bound %.2e); "
             "%d/20 within 1.05 D_x(0) e^{-delta t} (worst excess %.2e); %.1f s",
             admissible, worst_v, worst_x, envelope_ok, worst_envelope, elapsed));
}

void lemma_bounds(const sf::Trajectory& traj, const sf::ModelParams& p,
                  const sf::Thresholds& t) {
  const double psi_lower = sf::trajectory_psi_min(traj, p.kernel);
  const sf::VelocityBoundReport with_lower = sf::velocity_bound_check(traj, p, psi_lower);
  const sf::VelocityBoundReport with_psi_m = sf::velocity_bound_check(traj, p, t.psi_m);

  std::mt19937_64 rng(1009);
  long violations = 0;
  long evaluated = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double speed = trial % 3 == 0 ? 0.05 : (trial % 3 == 1 ? 1.0 : 3.0);
    const Ensemble e = sf::testing::random_valid_ensemble(rng, 2 + trial % 7, 0.8, speed);
    const sf::InhomogeneousBounds b = sf::inhomogeneous_bounds(e, p);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        const sf::InhomogeneousTerm f = sf::inhomogeneous_term(e, i, j, p);
        ++evaluated;
        const double slack = 1 + 1e-12;
        if (std::abs(f.f2) > b.f2 * slack || std::abs(f.f3) > b.f3 * slack ||
            f.vec().norm() > b.norm * slack) {
          ++violations;
        }
      }
    }
  }
  report(9, "velocity and inhomogeneity bounds",
         !with_lower.vacuous && with_lower.worst_violation <= 1e-8 && violations == 0,
         fmt("sigma=1 run with psi_m=psi(max D_x)=%.4f: worst violation %.2e; "
             "(threshold psi_m=%.4f is %s on this run); F-bounds: %ld violations in "
             "%ld pairs over 10000 ensembles",
             psi_lower, with_lower.worst_violation, t.psi_m,
             with_psi_m.vacuous ? "vacuous" : "applicable", violations, evaluated));
}

void x_m_fixed_point() {
  const sf::Kernel k = sf::paper_kernel();
  bool ok = true;
  std::string detail;
  for (double sigma : {0.5, 1.0, 2.0, 5.0}) {
    const sf::Thresholds t = sf::thresholds(k, sigma);
    const sf::XmRoot root = sf::solve_x_m(k, sigma, t.mu, t.c_const);
    const int changes = sf::count_x_m_sign_changes(k, root.coefficient, 100000);
    ok = ok && root.residual <= 1e-12 && changes == 1;
    detail += fmt("%ssigma=%g: X_M=%.6e residual %.1e, %d sign change%s",
                  detail.empty() ? "" : "; ", sigma, root.x_m, root.residual, changes,
                  changes == 1 ? "" : "s");
  }
  report(10, "X_M fixed point", ok, detail);
}

}  // namespace

int main() {
  rotation_identities();
  linearization_identity();

  const sf::Scenario paper = sf::paper_scenario(1.0);
  const sf::Thresholds t1 = sf::thresholds(paper.params.kernel, 1.0);
  const sf::Trajectory traj = sf::simulate(paper.ensemble, paper.params, paper.sim);

  dissipation_identity(traj);
  constraint_preservation(traj);
  integrator_order();
  rendezvous(traj, t1);
  inadmissible_sigma_five();
  theorem_on_constructed_data();
  lemma_bounds(traj, paper.params, t1);
  x_m_fixed_point();

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
