#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphereflock::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInvariantFailure = 1,
  kConfigError = 2,
  kAntipodalAbort = 3,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"simulate", "--preset", "paper-sigma1", "--out", "frames.csv"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// Worker count: `requested` (0 means hardware concurrency), capped by the
/// SPHEREFLOCK_THREADS environment variable when it is set. Throws
/// ConfigError for a malformed variable.
unsigned resolve_threads(unsigned requested);

}  // namespace sphereflock::cli
