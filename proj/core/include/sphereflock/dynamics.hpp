#pragma once

#include <cstddef>
#include <vector>

#include "sphereflock/geometry.hpp"
#include "sphereflock/kernel.hpp"

namespace sphereflock {

/// Positions and velocities of N agents.
///
/// The aggregate itself does not enforce the sphere constraints: intermediate
/// Runge-Kutta stages and perturbed states legitimately leave the manifold.
/// Use make_ensemble() at API boundaries to obtain a validated value.
struct Ensemble {
  std::vector<Vec3> x;
  std::vector<Vec3> v;

  std::size_t size() const { return x.size(); }
  bool operator==(const Ensemble&) const = default;
};

/// Tolerances of a valid ensemble: | ||x_i|| - 1 | and |<v_i, x_i>|.
inline constexpr double kRadialTolerance = 1e-9;
inline constexpr double kTangencyTolerance = 1e-8;

/// Throws InvalidEnsemble unless sizes match, n >= 1 and every agent satisfies
/// the radial and tangency tolerances.
Ensemble make_ensemble(std::vector<Vec3> x, std::vector<Vec3> v);
void check_ensemble(const Ensemble& e);

/// Renormalizes positions and projects velocities to the tangent planes.
/// Throws ZeroVector if a position is zero.
Ensemble project_ensemble(Ensemble e);

struct ModelParams {
  Kernel kernel = paper_kernel();
  /// Inter-particle bonding rate, >= 0.
  double sigma = 0.0;
};

/// Time derivative of an ensemble.
struct EnsembleRate {
  std::vector<Vec3> dx;
  std::vector<Vec3> dv;
};

/// Coefficient lambda_i of the constraint force lambda_i x_i:
///   -||v_i||^2 / ||x_i||^2 - (sigma / N) sum_k <x_k - x_i, x_i> / <x_i, x_i>.
double lagrange_multiplier(const Ensemble& e, std::size_t i,
                           const ModelParams& p);

/// Right-hand side of the flocking model:
///
///   dx_i = v_i,
///   dv_i = lambda_i x_i + (1/N) sum_k psi_ik (R_{x_k -> x_i} v_k - v_i)
///          + (sigma/N) sum_k (x_k - x_i).
///
/// On the sphere this equals -||v_i||^2 x_i + alignment + (sigma/N) sum_k
/// (x_k - <x_i, x_k> x_i); the multiplier form additionally keeps ||x_i|| and
/// <v_i, x_i> invariant off the sphere, which the Runge-Kutta stages visit.
/// Transport uses normalized position directions and psi is evaluated at
/// min(||x_i - x_k||, 2). The k = i term vanishes (R = I).
///
/// The outer loop over agents may be split across `threads` workers; the
/// inner sum over k is always in ascending order, so results do not depend on
/// the thread count. Throws AntipodalPair.
EnsembleRate rhs(const Ensemble& e, const ModelParams& p,
                 unsigned threads = 1);

/// X^{ij} = (||x_i - x_j||^2, <v_i - v_j, x_i - x_j>, ||v_i - v_j||^2).
struct PairFunctional {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  Eigen::Vector3d vec() const { return {x1, x2, x3}; }
  double norm() const { return vec().norm(); }
};

PairFunctional pair_functional(const Ensemble& e, std::size_t i,
                               std::size_t j);

/// A = [[0, 2, 0], [-sigma, -psi0, 1], [0, -2 sigma, -2 psi0]].
Mat3 coefficient_matrix(double psi0, double sigma);

/// Inhomogeneous term F^{ij} of dX^{ij}/dt = A X^{ij} + F^{ij}.
struct InhomogeneousTerm {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;

  Eigen::Vector3d vec() const { return {f1, f2, f3}; }
};

/// Evaluates F^{ij} term by term: F1 = 0; F2 is the kinetic term, the psi0
/// transport-difference term, the two kernel-deviation terms and the two
/// quartic bonding terms; F3 the matching six terms, with the bonding part in
/// the (<x_i,x_k> - 1) <x_i, v_j> form. Uses psi_ii = psi(0). Valid for
/// ensembles on the sphere. Throws AntipodalPair.
InhomogeneousTerm inhomogeneous_term(const Ensemble& e, std::size_t i,
                                     std::size_t j, const ModelParams& p);

/// mu = -max Re(eig A): psi0 if psi0^2 <= 4 sigma, else
/// psi0 - sqrt(psi0^2 - 4 sigma) (computed without cancellation).
double spectral_abscissa(double psi0, double sigma);

}  // namespace sphereflock
