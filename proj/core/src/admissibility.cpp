#include "sphereflock/admissibility.hpp"

#include <algorithm>
#include <cmath>

#include "sphereflock/diagnostics.hpp"
#include "sphereflock/errors.hpp"

namespace sphereflock {

double aggregate_constant(const Kernel& k, double sigma) {
  return std::max(16.0, 48.0 * k.c1_norm() + 8.0 * sigma + 24.0 * k.psi0());
}

InhomogeneousBounds inhomogeneous_bounds(const Ensemble& e,
                                         const ModelParams& p) {
  const Diameters d = diameters(e);
  const double v = d.v_max;
  const double dx2 = d.d_x * d.d_x;
  const double dv2 = d.d_v * d.d_v;
  const double c1 = p.kernel.c1_norm();
  const double psi0 = p.kernel.psi0();
  const double s = p.sigma;
  InhomogeneousBounds b;
  b.f2 = (v + 6.0 * c1) * v * dx2 + psi0 * v * dx2 * d.d_x + 0.5 * s * dx2 * dx2;
  b.f3 = (3.0 * v + 6.0 * c1 + 2.0 * s) * v * dx2 + (3.0 * v + 7.0 * c1) * v * dv2 +
         psi0 * v * dx2 * dx2;
  b.norm = aggregate_constant(p.kernel, s) * (v + v * v) / 4.0 * (dx2 + dv2) +
           0.5 * s * dx2 * dx2;
  return b;
}

XmRoot solve_x_m(const Kernel& k, double sigma, double mu, double c) {
  if (!(k.psi0() > 0.0)) throw NoRoot("psi(0) <= 0: no fixed point for X_M");

  XmRoot root;
  const double ratio = mu / (4.0 * c);
  root.coefficient = ratio < 1.0
                         ? mu / (std::sqrt(128.0) * c * sigma)
                         : std::sqrt(mu) / (std::sqrt(32.0 * c) * sigma);

  // h(s) = s - coef psi(s) is increasing, h(0) < 0 and h(2) = 2 > 0.
  const auto h = [&](double s) { return s - root.coefficient * k(s); };
  double lo = 0.0;
  double hi = 2.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++root.iterations;
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
  root.x_m = s * s;
  root.residual = std::abs(std::sqrt(root.x_m) -
                           root.coefficient * k(std::sqrt(root.x_m)));
  return root;
}

int count_x_m_sign_changes(const Kernel& k, double coefficient,
                           std::size_t grid_points) {
  int changes = 0;
  double prev = 0.0;
  for (std::size_t n = 0; n <= grid_points; ++n) {
    const double x = 4.0 * static_cast<double>(n) / static_cast<double>(grid_points);
    const double s = std::sqrt(x);
    const double g = s - coefficient * k(s);
    if (n > 0 && ((prev < 0.0) != (g < 0.0))) ++changes;
    prev = g;
  }
  return changes;
}

Thresholds thresholds(const Kernel& k, double sigma) {
  if (!(sigma > 0.0)) throw OutOfRange("thresholds need sigma > 0");
  const KernelValidation validation = validate_kernel(k, 10000);
  if (!validation.ok()) {
    std::string failed;
    for (const auto& check : validation.checks) {
      if (!check.passed) failed += (failed.empty() ? "" : ", ") + check.name;
    }
    throw InvalidKernel("kernel '" + k.name() + "' fails: " + failed);
  }

  Thresholds t;
  t.mu = spectral_abscissa(k.psi0(), sigma);
  t.c_const = aggregate_constant(k, sigma);
  const double ratio = t.mu / (4.0 * t.c_const);
  t.large_ratio = ratio >= 1.0;
  if (t.large_ratio) {
    t.v0 = std::sqrt(ratio);
    t.e0 = t.mu / (16.0 * t.c_const);
  } else {
    t.v0 = ratio;
    t.e0 = t.mu * t.mu / (64.0 * t.c_const * t.c_const);
  }
  const XmRoot root = solve_x_m(k, sigma, t.mu, t.c_const);
  t.x_m = root.x_m;
  t.x_m_residual = root.residual;
  t.psi_m = k(std::sqrt(t.x_m));
  t.delta = 0.5 * t.mu;
  return t;
}

AdmissibilityReport check_initial(const Ensemble& e0, const ModelParams& p) {
  AdmissibilityReport r;
  r.thresholds = thresholds(p.kernel, p.sigma);
  r.v_initial = diameters(e0).v_max;
  r.e_initial = energy(e0, p.sigma).total;
  r.x_initial = max_pair_functional(e0);
  r.bound_x = std::min(r.thresholds.mu / (2.0 * p.sigma), r.thresholds.x_m);
  r.speed_ok = r.v_initial < r.thresholds.v0;
  r.energy_ok = r.e_initial < r.thresholds.e0;
  r.spread_ok = r.x_initial < r.bound_x;
  r.admissible = r.speed_ok && r.energy_ok && r.spread_ok;
  return r;
}

}  // namespace sphereflock
