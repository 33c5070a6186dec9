#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sphereflock {

/// Communication rate psi(r) for chordal distance r in [0, 2].
///
/// Immutable after construction. The admissibility calculus requires
/// psi >= 0, strictly decreasing, psi(2) = 0 and C^1 on [0, 2]; kernels that
/// violate those are still usable by the simulator.
class Kernel {
 public:
  using Fn = std::function<double(double)>;

  /// `c1_norm` is sup_[0,2] (|psi| + |psi'|). When it is not known in closed
  /// form it is estimated on a dense grid and inflated by 1% so that it stays
  /// an upper bound.
  Kernel(std::string name, std::map<std::string, double> params, Fn psi,
         Fn dpsi, std::optional<double> c1_norm = std::nullopt);

  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }

  /// Throws OutOfRange for r < 0 or r > 2 + 1e-12.
  double operator()(double r) const;
  double derivative(double r) const;
  /// psi(min(r, 2)) without range checks; r must be >= 0.
  double value_clamped(double r) const { return psi_(r < 2.0 ? r : 2.0); }

  double psi0() const { return psi0_; }
  double c1_norm() const { return c1_norm_; }

 private:
  std::string name_;
  std::map<std::string, double> params_;
  Fn psi_;
  Fn dpsi_;
  double psi0_;
  double c1_norm_;
};

double eval_psi(const Kernel& k, double r);

/// psi(r) = scale * (exp(rate * (2 - r)) - 1).
Kernel exponential_kernel(double scale, double rate);
/// The built-in instance psi(r) = 3 (exp(2 - r) - 1).
Kernel paper_kernel();
/// psi(r) = slope * (2 - r).
Kernel linear_kernel(double slope);
/// psi(r) = value. Fails validation; exploratory runs only.
Kernel constant_kernel(double value);
/// Classical psi(r) = strength / (1 + r^2)^beta. Does not vanish at r = 2, so
/// it fails validation; exploratory runs only.
Kernel algebraic_kernel(double strength, double beta);

/// Builds a kernel from a registry name ("paper", "exponential", "linear",
/// "constant", "algebraic") and its parameters. Throws ConfigError for an
/// unknown name or a missing parameter.
Kernel make_kernel(const std::string& name,
                   const std::map<std::string, double>& params);

/// Names accepted by make_kernel.
std::vector<std::string> kernel_names();

struct KernelCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct KernelValidation {
  std::vector<KernelCheck> checks;

  bool ok() const;
  const KernelCheck* find(const std::string& name) const;
};

/// Grid checks of the kernel hypotheses: vanishing at 2, strict decrease,
/// nonnegativity, and consistency of the derivative with centered differences
/// and with c1_norm. Failures are reported, not thrown.
KernelValidation validate_kernel(const Kernel& k, std::size_t grid_points);

}  // namespace sphereflock
