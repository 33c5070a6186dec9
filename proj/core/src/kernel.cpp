#include "sphereflock/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "sphereflock/errors.hpp"

namespace sphereflock {
namespace {

constexpr std::size_t kNormGridPoints = 100000;
constexpr double kNormInflation = 1.01;

double grid_c1_norm(const Kernel::Fn& psi, const Kernel::Fn& dpsi) {
  double best = 0.0;
  for (std::size_t i = 0; i < kNormGridPoints; ++i) {
    const double r = 2.0 * static_cast<double>(i) / (kNormGridPoints - 1);
    best = std::max(best, std::abs(psi(r)) + std::abs(dpsi(r)));
  }
  return kNormInflation * best;
}

double require(const std::map<std::string, double>& params,
               const std::string& kernel, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw ConfigError("kernel '" + kernel + "' requires parameter '" + key +
                      "'");
  }
  return it->second;
}

}  // namespace

Kernel::Kernel(std::string name, std::map<std::string, double> params, Fn psi,
               Fn dpsi, std::optional<double> c1_norm)
    : name_(std::move(name)),
      params_(std::move(params)),
      psi_(std::move(psi)),
      dpsi_(std::move(dpsi)),
      psi0_(psi_(0.0)),
      c1_norm_(c1_norm ? *c1_norm : grid_c1_norm(psi_, dpsi_)) {}

double Kernel::operator()(double r) const {
  if (!(r >= 0.0 && r <= 2.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "kernel argument " << r << " outside [0, 2]";
    throw OutOfRange(msg.str());
  }
  return psi_(std::min(r, 2.0));
}

double Kernel::derivative(double r) const {
  if (!(r >= 0.0 && r <= 2.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "kernel argument " << r << " outside [0, 2]";
    throw OutOfRange(msg.str());
  }
  return dpsi_(std::min(r, 2.0));
}

double eval_psi(const Kernel& k, double r) { return k(r); }

Kernel exponential_kernel(double scale, double rate) {
  // |psi| + |psi'| is decreasing in r, so the sup sits at r = 0.
  const double peak = std::exp(2.0 * rate);
  const double c1 = std::abs(scale) * (peak - 1.0) +
                    std::abs(scale * rate) * peak;
  return Kernel(
      "exponential", {{"scale", scale}, {"rate", rate}},
      [scale, rate](double r) { return scale * std::expm1(rate * (2.0 - r)); },
      [scale, rate](double r) {
        return -scale * rate * std::exp(rate * (2.0 - r));
      },
      c1);
}

Kernel paper_kernel() {
  const double e2 = std::exp(2.0);
  return Kernel(
      "paper", {},
      [](double r) { return 3.0 * std::expm1(2.0 - r); },
      [](double r) { return -3.0 * std::exp(2.0 - r); }, 6.0 * e2 - 3.0);
}

Kernel linear_kernel(double slope) {
  return Kernel(
      "linear", {{"slope", slope}},
      [slope](double r) { return slope * (2.0 - r); },
      [slope](double) { return -slope; }, 3.0 * std::abs(slope));
}

Kernel constant_kernel(double value) {
  return Kernel(
      "constant", {{"value", value}}, [value](double) { return value; },
      [](double) { return 0.0; }, std::abs(value));
}

Kernel algebraic_kernel(double strength, double beta) {
  return Kernel(
      "algebraic", {{"strength", strength}, {"beta", beta}},
      [strength, beta](double r) {
        return strength * std::pow(1.0 + r * r, -beta);
      },
      [strength, beta](double r) {
        return -2.0 * beta * strength * r * std::pow(1.0 + r * r, -beta - 1.0);
      });
}

std::vector<std::string> kernel_names() {
  return {"paper", "exponential", "linear", "constant", "algebraic"};
}

Kernel make_kernel(const std::string& name,
                   const std::map<std::string, double>& params) {
  if (name == "paper") return paper_kernel();
  if (name == "exponential") {
    return exponential_kernel(require(params, name, "scale"),
                              require(params, name, "rate"));
  }
  if (name == "linear") return linear_kernel(require(params, name, "slope"));
  if (name == "constant") return constant_kernel(require(params, name, "value"));
  if (name == "algebraic") {
    return algebraic_kernel(require(params, name, "strength"),
                            require(params, name, "beta"));
  }
  throw ConfigError("unknown kernel '" + name + "'");
}

bool KernelValidation::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const KernelCheck& c) { return c.passed; });
}

const KernelCheck* KernelValidation::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

KernelValidation validate_kernel(const Kernel& k, std::size_t grid_points) {
  if (grid_points < 2) throw OutOfRange("validate_kernel needs >= 2 points");

  std::vector<double> r(grid_points);
  std::vector<double> psi(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    r[i] = 2.0 * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    psi[i] = k(r[i]);
  }

  KernelValidation out;
  std::ostringstream detail;

  const double at_two = k(2.0);
  detail << "psi(2) = " << at_two;
  out.checks.push_back({"psi(2)=0", std::abs(at_two) <= 1e-10, detail.str()});

  std::size_t first_bad = grid_points;
  for (std::size_t i = 1; i < grid_points; ++i) {
    if (!(psi[i] < psi[i - 1])) {
      first_bad = i;
      break;
    }
  }
  detail.str("");
  if (first_bad == grid_points) {
    detail << "strictly decreasing on " << grid_points << " points";
  } else {
    detail << "not decreasing at r = " << r[first_bad];
  }
  out.checks.push_back(
      {"strictly decreasing", first_bad == grid_points, detail.str()});

  const double min_psi = *std::min_element(psi.begin(), psi.end());
  detail.str("");
  detail << "min psi = " << min_psi;
  out.checks.push_back({"nonnegative", min_psi >= 0.0, detail.str()});

  // Centered differences with a fixed step, one-sided at the ends.
  constexpr double h = 1e-5;
  double worst_fd = 0.0;
  double worst_norm = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = r[i];
    const double lo = std::max(0.0, x - h);
    const double hi = std::min(2.0, x + h);
    const double fd = (k(hi) - k(lo)) / (hi - lo);
    const double d = k.derivative(x);
    finite = finite && std::isfinite(d) && std::isfinite(psi[i]);
    // One-sided differences at the ends are only first-order accurate.
    const double scale = (lo == x || hi == x) ? 1e-3 : 1e-6;
    worst_fd = std::max(worst_fd,
                        std::abs(fd - d) / (scale * std::max(1.0, k.c1_norm())));
    worst_norm = std::max(worst_norm, std::abs(psi[i]) + std::abs(d));
  }
  detail.str("");
  detail << "worst scaled centered-difference mismatch " << worst_fd;
  out.checks.push_back(
      {"derivative consistent", finite && worst_fd <= 1.0, detail.str()});

  detail.str("");
  detail << "grid sup |psi|+|psi'| = " << worst_norm << ", c1_norm = "
         << k.c1_norm();
  out.checks.push_back({"c1_norm bounds grid",
                        worst_norm <= k.c1_norm() * (1.0 + 1e-12),
                        detail.str()});
  return out;
}

}  // namespace sphereflock
