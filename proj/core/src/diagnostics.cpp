#include "sphereflock/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sphereflock/errors.hpp"
#include "sphereflock/integrator.hpp"

namespace sphereflock {

ConstraintDrift constraint_drift(const Ensemble& e) {
  ConstraintDrift d;
  for (std::size_t i = 0; i < e.size(); ++i) {
    d.radial = std::max(d.radial, std::abs(e.x[i].norm() - 1.0));
    d.tangency = std::max(d.tangency, std::abs(e.v[i].dot(e.x[i])));
  }
  return d;
}

Energy energy(const Ensemble& e, double sigma) {
  const double n = static_cast<double>(e.size());
  double kinetic = 0.0;
  for (const auto& v : e.v) kinetic += v.squaredNorm();
  kinetic /= n;

  // Ordered pairs, k = l included (zero summands).
  double spread = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    for (std::size_t l = 0; l < e.size(); ++l) {
      spread += (e.x[k] - e.x[l]).squaredNorm();
    }
  }
  const double config = sigma / (2.0 * n * n) * spread;
  return {kinetic + config, kinetic, config};
}

double dissipation_rate(const Ensemble& e, const ModelParams& p) {
  const std::size_t n = e.size();
  std::vector<Vec3> dirs(n);
  for (std::size_t i = 0; i < n; ++i) dirs[i] = e.x[i].normalized();

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double psi = p.kernel.value_clamped((e.x[i] - e.x[j]).norm());
      const Vec3 gap = transport_matrix(dirs[j], dirs[i]) * e.v[j] - e.v[i];
      total += psi * gap.squaredNorm();
    }
  }
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  return total / nn;
}

double energy_rate(const Ensemble& e, const ModelParams& p) {
  const EnsembleRate r = rhs(e, p);
  const std::size_t n = e.size();
  const double nd = static_cast<double>(n);

  double kinetic = 0.0;
  for (std::size_t i = 0; i < n; ++i) kinetic += r.dv[i].dot(e.v[i]);

  double config = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      config += (e.x[k] - e.x[l]).dot(r.dx[k] - r.dx[l]);
    }
  }
  return 2.0 / nd * kinetic + p.sigma / (nd * nd) * config;
}

double dissipation_residual(const Ensemble& e, const ModelParams& p) {
  return std::abs(energy_rate(e, p) + dissipation_rate(e, p));
}

Diameters diameters(const Ensemble& e) {
  Diameters d;
  for (std::size_t i = 0; i < e.size(); ++i) {
    d.v_max = std::max(d.v_max, e.v[i].norm());
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      d.d_x = std::max(d.d_x, (e.x[i] - e.x[j]).norm());
      d.d_v = std::max(d.d_v, (e.v[i] - e.v[j]).norm());
    }
  }
  return d;
}

FlockingMetrics flocking_metrics(const Ensemble& e) {
  const std::size_t n = e.size();
  std::vector<Vec3> dirs(n);
  for (std::size_t i = 0; i < n; ++i) dirs[i] = e.x[i].normalized();

  FlockingMetrics m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double margin = (e.x[i] + e.x[j]).norm();
      m.antipode_margin = std::min(m.antipode_margin, margin);
      if (i == j) continue;
      if ((dirs[i] + dirs[j]).norm() <= kAntipodalTolerance) {
        m.antipodal_pair = true;
        continue;
      }
      const Vec3 gap = transport_matrix(dirs[j], dirs[i]) * e.v[j] - e.v[i];
      m.flock_align = std::max(m.flock_align, margin * gap.norm());
    }
  }
  return m;
}

double max_pair_functional(const Ensemble& e) {
  double best = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      best = std::max(best, pair_functional(e, i, j).norm());
    }
  }
  return best;
}

DiagnosticsFrame diagnose(double t, const Ensemble& e, double sigma,
                          const ConstraintDrift& drift) {
  const Energy en = energy(e, sigma);
  const Diameters d = diameters(e);
  const FlockingMetrics f = flocking_metrics(e);

  DiagnosticsFrame out;
  out.t = t;
  out.e_total = en.total;
  out.e_kinetic = en.kinetic;
  out.e_config = en.config;
  out.d_x = d.d_x;
  out.d_v = d.d_v;
  out.v_max = d.v_max;
  out.flock_align = f.flock_align;
  out.antipode_margin = f.antipode_margin;
  out.drift = drift;
  out.x_max = max_pair_functional(e);
  return out;
}

double trajectory_psi_min(const Trajectory& traj, const Kernel& k) {
  double widest = 0.0;
  for (const auto& f : traj.frames) widest = std::max(widest, f.diag.d_x);
  return k.value_clamped(widest);
}

VelocityBoundReport velocity_bound_check(const Trajectory& traj,
                                         const ModelParams& p, double psi_m) {
  VelocityBoundReport report;
  if (traj.frames.empty()) return report;
  if (!(psi_m > 0.0) || trajectory_psi_min(traj, p.kernel) < psi_m) {
    report.vacuous = true;
    return report;
  }

  const double v0_sq = traj.frames.front().diag.v_max *
                       traj.frames.front().diag.v_max;
  const double sigma = p.sigma;
  double sup_kinetic = 0.0;
  double sup_dx_sq = 0.0;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < traj.frames.size(); ++n) {
    const DiagnosticsFrame& d = traj.frames[n].diag;
    sup_kinetic = std::max(sup_kinetic, d.e_kinetic);
    sup_dx_sq = std::max(sup_dx_sq, d.d_x * d.d_x);
    const double decay = std::exp(-0.5 * psi_m * d.t);
    const double bound =
        decay * v0_sq +
        (1.0 - decay) * (2.0 * sup_kinetic +
                         4.0 * sigma * sigma / (psi_m * psi_m) * sup_dx_sq);
    const double violation = d.v_max * d.v_max - bound;
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.worst_frame = n;
    }
  }
  return report;
}

DecayFit fit_decay_rate(std::span<const TimeValue> series,
                        std::pair<double, double> window) {
  std::vector<TimeValue> used;
  for (const auto& s : series) {
    if (s.t < window.first || s.t > window.second) continue;
    if (!(s.value > 0.0)) {
      std::ostringstream msg;
      msg << "nonpositive value " << s.value << " at t = " << s.t;
      throw NonPositiveValue(msg.str());
    }
    used.push_back(s);
  }
  if (used.size() < 10) {
    throw InsufficientSamples("fit window holds " +
                              std::to_string(used.size()) +
                              " samples, need at least 10");
  }

  const double n = static_cast<double>(used.size());
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (const auto& s : used) {
    mean_t += s.t;
    mean_y += std::log(s.value);
  }
  mean_t /= n;
  mean_y /= n;

  double stt = 0.0;
  double sty = 0.0;
  double syy = 0.0;
  for (const auto& s : used) {
    const double dt = s.t - mean_t;
    const double dy = std::log(s.value) - mean_y;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }

  DecayFit fit;
  fit.samples = used.size();
  // A constant series leaves only rounding noise in syy.
  const double noise = 1e-14 * std::max(1.0, std::abs(mean_y));
  if (stt > 0.0 && syy > n * noise * noise) {
    fit.rate = -sty / stt;
    fit.r_squared = (sty * sty) / (stt * syy);
  } else {
    fit.rate = 0.0;
    fit.r_squared = 0.0;
    fit.r_squared_defined = false;
  }
  return fit;
}

}  // namespace sphereflock
