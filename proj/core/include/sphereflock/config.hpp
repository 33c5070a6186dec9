#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sphereflock/integrator.hpp"
#include "sphereflock/scenario.hpp"

namespace sphereflock {

struct KernelSpec {
  std::string name = "paper";
  std::map<std::string, double> params;

  bool operator==(const KernelSpec&) const = default;
};

struct ScenarioSpec {
  /// "paper", "random" or "explicit".
  std::string type = "paper";
  std::string label;
  /// random only.
  std::size_t n = 6;
  double pos_spread = 0.0;
  double vel_scale = 0.0;
  /// explicit only, one entry per agent.
  std::vector<Vec3> x;
  std::vector<Vec3> v;

  bool operator==(const ScenarioSpec&) const = default;
};

/// A run configuration. Text form is INI-like:
///
///   [kernel]    name = paper | exponential | linear | constant | algebraic,
///               plus the kernel's numeric parameters
///   [params]    sigma
///   [sim]       dt, t_end, projection (on|off), frame_stride, seed
///   [scenario]  type, label, n, pos_spread, vel_scale, x.<i>, v.<i>
///
/// `#` starts a comment. Explicit agents use 1-based keys x.1 = a b c.
struct Config {
  KernelSpec kernel;
  double sigma = 1.0;
  SimConfig sim;
  ScenarioSpec scenario;

  bool operator==(const Config&) const = default;
};

/// Throws ConfigError with the offending line number.
Config parse_config(std::string_view text);
/// Numbers are written in shortest round-trip form, so
/// parse_config(emit_config(c)) == c.
std::string emit_config(const Config& c);

Config load_config(const std::filesystem::path& path);

/// Built-in configurations "paper-sigma1" and "paper-sigma5".
Config preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// Throws ConfigError / InvalidEnsemble when the configuration does not
/// describe a valid scenario.
Scenario build_scenario(const Config& c);

}  // namespace sphereflock
