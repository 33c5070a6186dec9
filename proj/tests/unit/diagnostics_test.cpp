#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sphereflock/diagnostics.hpp"
#include "sphereflock/errors.hpp"
#include "sphereflock/integrator.hpp"
#include "sphereflock/scenario.hpp"
#include "support.hpp"

namespace sphereflock {
namespace {

using testing::random_valid_ensemble;

TEST(ConstraintDrift, Measures) {
  std::mt19937_64 rng(2);
  Ensemble e = random_valid_ensemble(rng, 6);
  const ConstraintDrift fresh = constraint_drift(e);
  EXPECT_LE(fresh.radial, 1e-9);
  EXPECT_LE(fresh.tangency, 1e-9);
  e.x[0] *= 1.01;
  EXPECT_NEAR(constraint_drift(e).radial, 0.01, 1e-14);
}

TEST(Energy, Examples) {
  const Vec3 x = Vec3(0, 0.6, 0.8);
  const Vec3 v = Vec3(3, 0, 0);
  const Energy flock = energy(Ensemble{{x, x, x}, {v, v, v}}, 2.0);
  EXPECT_DOUBLE_EQ(flock.total, 9.0);
  EXPECT_DOUBLE_EQ(flock.kinetic, 9.0);
  EXPECT_EQ(flock.config, 0.0);

  const Energy pair = energy(Ensemble{{Vec3::UnitX(), -Vec3::UnitX()},
                                      {Vec3::Zero(), Vec3::Zero()}},
                             1.5);
  EXPECT_DOUBLE_EQ(pair.config, 1.5);
  EXPECT_DOUBLE_EQ(pair.total, 1.5);
}

TEST(Energy, PaperScenarioBaseline) {
  const Scenario s = paper_scenario(1.0);
  const Energy e = energy(s.ensemble, 1.0);
  EXPECT_NEAR(e.total, 0.68049878909417427, 1e-14);
  EXPECT_NEAR(e.kinetic, 0.40730632456293486, 1e-14);
}

TEST(Dissipation, TrivialCases) {
  const ModelParams p{paper_kernel(), 1.0};
  const Ensemble one{{Vec3::UnitZ()}, {Vec3::UnitX()}};
  EXPECT_EQ(dissipation_rate(one, p), 0.0);
  EXPECT_NEAR(energy_rate(one, p), 0.0, 1e-15);
  const Vec3 x = Vec3(0, 0.6, 0.8);
  const Vec3 v = Vec3(1, 0, 0);
  const Ensemble flock{{x, x}, {v, v}};
  EXPECT_EQ(dissipation_rate(flock, p), 0.0);
  EXPECT_NEAR(energy_rate(flock, p), 0.0, 1e-15);
}

TEST(Dissipation, IdentityOnRandomEnsembles) {
  std::mt19937_64 rng(47);
  for (double sigma : {0.0, 1.0, 5.0}) {
    const ModelParams p{paper_kernel(), sigma};
    for (int trial = 0; trial < 300; ++trial) {
      const Ensemble e = random_valid_ensemble(rng, 2 + trial % 9);
      const double rate = energy_rate(e, p);
      EXPECT_LE(dissipation_residual(e, p), 1e-10 * std::max(1.0, std::abs(rate)));
      EXPECT_GE(dissipation_rate(e, p), 0.0);
    }
  }
}

// Independent of energy_rate(): central difference of E along rhs().
TEST(Dissipation, EnergyRateMatchesFiniteDifference) {
  std::mt19937_64 rng(53);
  const ModelParams p{paper_kernel(), 1.0};
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const Ensemble e = random_valid_ensemble(rng, 2 + trial % 6);
    const EnsembleRate r = rhs(e, p);
    Ensemble plus = e;
    Ensemble minus = e;
    for (std::size_t i = 0; i < e.size(); ++i) {
      plus.x[i] += h * r.dx[i];
      plus.v[i] += h * r.dv[i];
      minus.x[i] -= h * r.dx[i];
      minus.v[i] -= h * r.dv[i];
    }
    const double fd = (energy(plus, p.sigma).total - energy(minus, p.sigma).total) / (2 * h);
    const double analytic = energy_rate(e, p);
    EXPECT_NEAR(analytic, fd, 1e-7 * std::max(1.0, std::abs(analytic)));
    EXPECT_NEAR(-dissipation_rate(e, p), fd, 1e-7 * std::max(1.0, std::abs(analytic)));
  }
}

TEST(Diameters, Examples) {
  const Diameters one = diameters(Ensemble{{Vec3::UnitX()}, {Vec3(0, 0.6, 0.8)}});
  EXPECT_EQ(one.d_x, 0.0);
  EXPECT_EQ(one.d_v, 0.0);
  EXPECT_DOUBLE_EQ(one.v_max, 1.0);

  const Diameters anti =
      diameters(Ensemble{{Vec3::UnitX(), -Vec3::UnitX()}, {Vec3::Zero(), Vec3::Zero()}});
  EXPECT_DOUBLE_EQ(anti.d_x, 2.0);
  EXPECT_EQ(anti.d_v, 0.0);

  const Diameters d =
      diameters(Ensemble{{Vec3::UnitX(), Vec3::UnitY()}, {Vec3::UnitZ(), -Vec3::UnitZ()}});
  EXPECT_DOUBLE_EQ(d.d_x, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(d.d_v, 2.0);
  EXPECT_DOUBLE_EQ(d.v_max, 1.0);
}

TEST(FlockingMetrics, Examples) {
  const Vec3 x = Vec3(0, 0.6, 0.8);
  const Vec3 v = Vec3(1, 0, 0);
  const FlockingMetrics flock = flocking_metrics(Ensemble{{x, x}, {v, v}});
  EXPECT_EQ(flock.flock_align, 0.0);
  EXPECT_DOUBLE_EQ(flock.antipode_margin, 2.0);

  const FlockingMetrics anti = flocking_metrics(
      Ensemble{{Vec3::UnitX(), -Vec3::UnitX()}, {Vec3::UnitY(), Vec3::UnitZ()}});
  EXPECT_EQ(anti.antipode_margin, 0.0);
  EXPECT_TRUE(anti.antipodal_pair);
}

TEST(MaxPairFunctional, Examples) {
  const Vec3 x = Vec3(0, 0.6, 0.8);
  const Vec3 v = Vec3(1, 0, 0);
  EXPECT_EQ(max_pair_functional(Ensemble{{x, x}, {v, v}}), 0.0);
  EXPECT_DOUBLE_EQ(max_pair_functional(Ensemble{{Vec3::UnitX(), -Vec3::UnitX()},
                                                {Vec3::Zero(), Vec3::Zero()}}),
                   4.0);
}

TEST(MaxPairFunctional, DominatesSquaredDiameters) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const Ensemble e = random_valid_ensemble(rng, 5);
    const Diameters d = diameters(e);
    const double x = max_pair_functional(e);
    EXPECT_GE(x, d.d_x * d.d_x * (1 - 1e-15));
    EXPECT_GE(x, d.d_v * d.d_v * (1 - 1e-15));
  }
}

TEST(Diagnostics, PermutationInvariant) {
  std::mt19937_64 rng(61);
  const Ensemble e = random_valid_ensemble(rng, 8);
  std::vector<std::size_t> perm(8);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Ensemble q = e;
  for (std::size_t i = 0; i < 8; ++i) {
    q.x[i] = e.x[perm[i]];
    q.v[i] = e.v[perm[i]];
  }
  const DiagnosticsFrame a = diagnose(0, e, 1.0, {});
  const DiagnosticsFrame b = diagnose(0, q, 1.0, {});
  EXPECT_NEAR(a.e_total, b.e_total, 1e-14);
  EXPECT_EQ(a.d_x, b.d_x);
  EXPECT_EQ(a.d_v, b.d_v);
  EXPECT_EQ(a.v_max, b.v_max);
  EXPECT_NEAR(a.flock_align, b.flock_align, 1e-14);
  EXPECT_EQ(a.antipode_margin, b.antipode_margin);
  EXPECT_EQ(a.x_max, b.x_max);
}

std::vector<TimeValue> sample(double t0, double t1, std::size_t n, auto&& f) {
  std::vector<TimeValue> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0 + (t1 - t0) * k / (n - 1);
    out.push_back({t, f(t)});
  }
  return out;
}

TEST(DecayFit, ExactExponential) {
  const auto s = sample(0, 50, 101, [](double t) { return 2.5 * std::exp(-0.3 * t); });
  const DecayFit fit = fit_decay_rate(s, {0, 50});
  EXPECT_NEAR(fit.rate, 0.3, 1e-10);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_TRUE(fit.r_squared_defined);
  EXPECT_EQ(fit.samples, 101u);
}

TEST(DecayFit, ConstantSeries) {
  const auto s = sample(0, 10, 20, [](double) { return 4.0; });
  const DecayFit fit = fit_decay_rate(s, {0, 10});
  EXPECT_EQ(fit.rate, 0.0);
  EXPECT_EQ(fit.r_squared, 0.0);
  EXPECT_FALSE(fit.r_squared_defined);
}

TEST(DecayFit, ModulatedExponential) {
  const double b = 0.2;
  const auto s = sample(0, 80, 801, [&](double t) {
    return std::exp(-b * t) * (1 + 0.01 * std::sin(t));
  });
  EXPECT_NEAR(fit_decay_rate(s, {0, 80}).rate, b, 0.02 * b);
}

TEST(DecayFit, WindowSelectsSamples) {
  const auto s = sample(0, 10, 101, [](double t) { return std::exp(t < 5 ? -t : -2 * t + 5); });
  const DecayFit late = fit_decay_rate(s, {5, 10});
  EXPECT_NEAR(late.rate, 2.0, 1e-10);
  EXPECT_EQ(late.samples, 51u);
}

TEST(DecayFit, Errors) {
  const auto few = sample(0, 1, 9, [](double t) { return std::exp(-t); });
  EXPECT_THROW(fit_decay_rate(few, {0, 1}), InsufficientSamples);
  auto bad = sample(0, 1, 20, [](double t) { return std::exp(-t); });
  bad[7].value = 0.0;
  EXPECT_THROW(fit_decay_rate(bad, {0, 1}), NonPositiveValue);
  EXPECT_NO_THROW(fit_decay_rate(bad, {0.5, 1}));
}

TEST(VelocityBound, SingleAgentHoldsWithSlack) {
  const ModelParams p{linear_kernel(1.0), 0.0};
  const Ensemble e{{Vec3::UnitX()}, {0.5 * Vec3::UnitY()}};
  SimConfig c;
  c.t_end = 5;
  c.frame_stride = 50;
  const Trajectory traj = simulate(e, p, c);
  const VelocityBoundReport r = velocity_bound_check(traj, p, 1.0);
  EXPECT_FALSE(r.vacuous);
  EXPECT_LE(r.worst_violation, 1e-12);
}

TEST(VelocityBound, MisdeclaredRateIsVacuous) {
  const Scenario s = paper_scenario(1.0);
  SimConfig c;
  c.t_end = 2;
  const Trajectory traj = simulate(s.ensemble, s.params, c);
  const double psi_min = trajectory_psi_min(traj, s.params.kernel);
  EXPECT_FALSE(velocity_bound_check(traj, s.params, psi_min).vacuous);
  const VelocityBoundReport r = velocity_bound_check(traj, s.params, 2 * psi_min);
  EXPECT_TRUE(r.vacuous);
  EXPECT_EQ(r.worst_violation, 0.0);
}

}  // namespace
}  // namespace sphereflock
