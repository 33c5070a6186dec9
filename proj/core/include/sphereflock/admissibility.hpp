#pragma once

#include "sphereflock/dynamics.hpp"
#include "sphereflock/kernel.hpp"

namespace sphereflock {

/// Aggregation constant C(psi, sigma) with
///   ||F^{ij}|| <= C (V + V^2)/4 (D_x^2 + D_v^2) + (sigma/2) D_x^4.
///
/// Summing the two term-by-term bounds on |F2| and |F3| gives coefficients
///   D_x^2 : 4 V^2 + (12 ||psi||_C1 + 2 sigma) V + psi0 V (D_x + D_x^2)
///   D_v^2 : 3 V^2 + 7 ||psi||_C1 V
/// and with D_x <= 2 the psi0 part is at most 6 psi0 V D_x^2. Matching against
/// C (V + V^2)/4 yields
///   C = max(16, 48 ||psi||_C1 + 8 sigma + 24 psi0).
double aggregate_constant(const Kernel& k, double sigma);

/// Upper bounds on the inhomogeneous term in terms of V = max speed,
/// D_x and D_v:
///   |F2| <= (V + 6 ||psi||_C1) V D_x^2 + psi0 V D_x^3 + (sigma/2) D_x^4
///   |F3| <= (3V + 6 ||psi||_C1 + 2 sigma) V D_x^2
///           + (3V + 7 ||psi||_C1) V D_v^2 + psi0 V D_x^4
///   ||F|| <= C (V + V^2)/4 (D_x^2 + D_v^2) + (sigma/2) D_x^4.
struct InhomogeneousBounds {
  double f2 = 0.0;
  double f3 = 0.0;
  double norm = 0.0;
};

InhomogeneousBounds inhomogeneous_bounds(const Ensemble& e,
                                         const ModelParams& p);

/// Root of sqrt(X) = coef * psi(sqrt(X)) on (0, 4) by bisection in s = sqrt(X).
struct XmRoot {
  double x_m = 0.0;
  /// |sqrt(x_m) - coef * psi(sqrt(x_m))|.
  double residual = 0.0;
  /// mu / (sqrt(128) C sigma) when mu/4C < 1, else sqrt(mu) / (sqrt(32 C) sigma).
  double coefficient = 0.0;
  int iterations = 0;
};

/// Throws NoRoot if psi(0) <= 0.
XmRoot solve_x_m(const Kernel& k, double sigma, double mu, double c);

/// Number of sign changes of sqrt(X) - coef * psi(sqrt(X)) over the samples
/// X = 0, h, 2h, ..., 4 with h = 4 / grid_points.
int count_x_m_sign_changes(const Kernel& k, double coefficient,
                           std::size_t grid_points);

struct Thresholds {
  double mu = 0.0;
  double c_const = 0.0;
  double v0 = 0.0;
  double e0 = 0.0;
  double x_m = 0.0;
  double psi_m = 0.0;
  double delta = 0.0;
  /// True when mu / 4C >= 1 (the square-root branch).
  bool large_ratio = false;
  double x_m_residual = 0.0;
};

/// Constants of the rendezvous theorem for a kernel and bonding rate:
///   V0 = mu/4C,        E0 = mu^2/64C^2   if mu/4C < 1,
///   V0 = sqrt(mu/4C),  E0 = mu/16C       otherwise,
/// X_M from solve_x_m, psi_m = psi(sqrt(X_M)), delta = mu/2.
/// Throws InvalidKernel if the kernel fails validation and OutOfRange unless
/// sigma > 0.
Thresholds thresholds(const Kernel& k, double sigma);

struct AdmissibilityReport {
  Thresholds thresholds;
  double v_initial = 0.0;
  double e_initial = 0.0;
  double x_initial = 0.0;
  /// min(mu / 2 sigma, X_M).
  double bound_x = 0.0;
  bool speed_ok = false;
  bool energy_ok = false;
  bool spread_ok = false;
  bool admissible = false;
};

/// Evaluates the three strict inequalities V(0) < V0, E(0) < E0 and
/// X(0) < min(mu / 2 sigma, X_M) with no slack.
AdmissibilityReport check_initial(const Ensemble& e0, const ModelParams& p);

}  // namespace sphereflock
