#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sphereflock {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-check of the library on randomized inputs: transport identities,
/// the pair-functional linearization, energy dissipation, threshold
/// computation, a short constrained simulation and config round-trips.
/// Takes a few seconds.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed,
                                             unsigned threads = 1);

}  // namespace sphereflock
