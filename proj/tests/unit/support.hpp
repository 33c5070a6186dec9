#pragma once

#include <cstddef>
#include <random>

#include "oracles/reference_model.hpp"
#include "sphereflock/dynamics.hpp"

namespace sphereflock::testing {

inline Vec3 gaussian3(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const double a = normal(rng);
  const double b = normal(rng);
  const double c = normal(rng);
  return {a, b, c};
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  Vec3 z;
  do {
    z = gaussian3(rng);
  } while (z.norm() < 1e-3);
  return z.normalized();
}

/// Positions normalize(center + spread * g), velocities tangent-projected
/// gaussians times `speed`. Rejects configurations with a pair closer than
/// 0.05 to antipodal.
inline Ensemble random_valid_ensemble(std::mt19937_64& rng, std::size_t n,
                                      double spread = 0.7, double speed = 1.0) {
  while (true) {
    const Vec3 center = random_unit(rng);
    Ensemble e{std::vector<Vec3>(n), std::vector<Vec3>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      Vec3 x;
      do {
        x = center + spread * gaussian3(rng);
      } while (x.norm() < 1e-3);
      e.x[i] = x.normalized();
      const Vec3 g = gaussian3(rng);
      e.v[i] = speed * (g - g.dot(e.x[i]) * e.x[i]);
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        ok = (e.x[i] + e.x[j]).norm() > 0.05;
      }
    }
    if (ok) return e;
  }
}

inline oracle::LState to_long(const Ensemble& e) {
  oracle::LState s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    s.x.push_back({e.x[i][0], e.x[i][1], e.x[i][2]});
    s.v.push_back({e.v[i][0], e.v[i][1], e.v[i][2]});
  }
  return s;
}

}  // namespace sphereflock::testing
