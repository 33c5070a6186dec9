#include "sphereflock/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "sphereflock/errors.hpp"

namespace sphereflock {

Ensemble make_ensemble(std::vector<Vec3> x, std::vector<Vec3> v) {
  Ensemble e{std::move(x), std::move(v)};
  check_ensemble(e);
  return e;
}

void check_ensemble(const Ensemble& e) {
  if (e.x.size() != e.v.size()) {
    throw InvalidEnsemble("position and velocity counts differ");
  }
  if (e.x.empty()) throw InvalidEnsemble("ensemble has no agents");
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double radial = std::abs(e.x[i].norm() - 1.0);
    const double tangency = std::abs(e.v[i].dot(e.x[i]));
    if (!(radial <= kRadialTolerance) || !(tangency <= kTangencyTolerance)) {
      std::ostringstream msg;
      msg << "agent " << i << " off the constraint set (radial " << radial
          << ", tangency " << tangency << ")";
      throw InvalidEnsemble(msg.str());
    }
  }
}

Ensemble project_ensemble(Ensemble e) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    const UnitVector x = project_to_sphere(e.x[i]);
    e.x[i] = x.vec();
    e.v[i] = project_to_tangent(x, e.v[i]).vec();
  }
  return e;
}

double lagrange_multiplier(const Ensemble& e, std::size_t i,
                           const ModelParams& p) {
  const Vec3& xi = e.x[i];
  const double xx = xi.squaredNorm();
  double bond = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) bond += (e.x[k] - xi).dot(xi);
  const double n = static_cast<double>(e.size());
  return -e.v[i].squaredNorm() / xx - (p.sigma / n) * bond / xx;
}

namespace {

void agent_rate(const Ensemble& e, const std::vector<Vec3>& dirs,
                const ModelParams& p, std::size_t i, EnsembleRate& out) {
  const std::size_t n = e.size();
  const Vec3& xi = e.x[i];
  const Vec3& vi = e.v[i];
  Vec3 align = Vec3::Zero();
  Vec3 bond = Vec3::Zero();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i) continue;
    const Mat3 r = transport_matrix(dirs[k], dirs[i]);
    const double psi = p.kernel.value_clamped((xi - e.x[k]).norm());
    align += psi * (r * e.v[k] - vi);
    bond += e.x[k] - xi;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.dx[i] = vi;
  out.dv[i] = lagrange_multiplier(e, i, p) * xi + inv_n * align +
              (p.sigma * inv_n) * bond;
}

}  // namespace

EnsembleRate rhs(const Ensemble& e, const ModelParams& p, unsigned threads) {
  const std::size_t n = e.size();
  std::vector<Vec3> dirs(n);
  for (std::size_t i = 0; i < n; ++i) dirs[i] = e.x[i].normalized();

  EnsembleRate out{std::vector<Vec3>(n), std::vector<Vec3>(n)};
  const std::size_t workers = std::min<std::size_t>(threads, n / 8);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) agent_rate(e, dirs, p, i, out);
    return out;
  }

  // Contiguous blocks per worker; the first error is rethrown after join.
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) {
            agent_rate(e, dirs, p, i, out);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

PairFunctional pair_functional(const Ensemble& e, std::size_t i,
                               std::size_t j) {
  const Vec3 dx = e.x[i] - e.x[j];
  const Vec3 dv = e.v[i] - e.v[j];
  return {dx.squaredNorm(), dv.dot(dx), dv.squaredNorm()};
}

Mat3 coefficient_matrix(double psi0, double sigma) {
  Mat3 a;
  a << 0.0, 2.0, 0.0,
       -sigma, -psi0, 1.0,
       0.0, -2.0 * sigma, -2.0 * psi0;
  return a;
}

InhomogeneousTerm inhomogeneous_term(const Ensemble& e, std::size_t i,
                                     std::size_t j, const ModelParams& p) {
  const std::size_t n = e.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double psi0 = p.kernel.psi0();
  const double sigma = p.sigma;

  const Vec3& xi = e.x[i];
  const Vec3& xj = e.x[j];
  const Vec3& vi = e.v[i];
  const Vec3& vj = e.v[j];
  const Vec3 dx = xi - xj;
  const Vec3 dv = vi - vj;
  const double x1 = dx.squaredNorm();

  double f2 = -0.5 * (vi.squaredNorm() + vj.squaredNorm()) * x1;
  double f3 = 2.0 * (-vi.squaredNorm() * xi + vj.squaredNorm() * xj).dot(dv);

  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& xk = e.x[k];
    const Vec3& vk = e.v[k];
    const Vec3 to_i = transport_matrix(xk, xi) * vk;
    const Vec3 to_j = transport_matrix(xk, xj) * vk;
    const double dev_i = (p.kernel.value_clamped((xi - xk).norm()) - psi0) * inv_n;
    const double dev_j = (p.kernel.value_clamped((xj - xk).norm()) - psi0) * inv_n;

    f2 += psi0 * inv_n * (to_i - to_j).dot(dx);
    f2 += dev_i * (to_i - vi).dot(dx);
    f2 -= dev_j * (to_j - vj).dot(dx);
    f2 += 0.25 * sigma * inv_n * (xk - xi).squaredNorm() * x1;
    f2 += 0.25 * sigma * inv_n * (xk - xj).squaredNorm() * x1;

    f3 += 2.0 * psi0 * inv_n * (to_i - to_j).dot(dv);
    f3 += 2.0 * dev_i * (to_i - vi).dot(dv);
    f3 -= 2.0 * dev_j * (to_j - vj).dot(dv);
    f3 += 2.0 * sigma * inv_n * (xi.dot(xk) - 1.0) * xi.dot(vj);
    f3 += 2.0 * sigma * inv_n * (xj.dot(xk) - 1.0) * xj.dot(vi);
  }
  return {0.0, f2, f3};
}

double spectral_abscissa(double psi0, double sigma) {
  const double disc = psi0 * psi0 - 4.0 * sigma;
  if (disc <= 0.0) return psi0;
  // psi0 - sqrt(disc) = 4 sigma / (psi0 + sqrt(disc)).
  return 4.0 * sigma / (psi0 + std::sqrt(disc));
}

}  // namespace sphereflock
