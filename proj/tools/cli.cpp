#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "sphereflock/admissibility.hpp"
#include "sphereflock/config.hpp"
#include "sphereflock/errors.hpp"
#include "sphereflock/integrator.hpp"
#include "sphereflock/io.hpp"
#include "sphereflock/run.hpp"
#include "sphereflock/verify.hpp"

namespace sphereflock::cli {
namespace {

namespace fs = std::filesystem;

struct Source {
  std::string preset;
  std::string config;
  std::optional<double> sigma;
  std::optional<double> t_end;
  std::optional<double> dt;
  std::optional<std::size_t> stride;
  std::optional<std::uint64_t> seed;
  bool no_projection = false;
  unsigned threads = 0;

  void add_to(CLI::App& app, bool sim_flags) {
    auto* p = app.add_option("--preset", preset, "Built-in configuration");
    auto* c = app.add_option("--config", config, "Configuration file")
                  ->check(CLI::ExistingFile);
    p->excludes(c);
    app.add_option("--sigma", sigma, "Override the bonding rate");
    if (!sim_flags) return;
    app.add_option("--t-end", t_end, "Override the final time");
    app.add_option("--dt", dt, "Override the step size");
    app.add_option("--stride", stride, "Override the frame stride");
    app.add_option("--seed", seed, "Override the random seed");
    app.add_flag("--no-projection", no_projection,
                 "Do not project back onto the constraint set after each step");
    app.add_option("--threads", threads,
                   "Worker threads (0: all cores; capped by SPHEREFLOCK_THREADS)");
  }

  Config resolve() const {
    if (preset.empty() && config.empty()) {
      throw ConfigError("one of --preset or --config is required");
    }
    Config c = preset.empty() ? load_config(config) : preset_config(preset);
    if (sigma) c.sigma = *sigma;
    if (t_end) c.sim.t_end = *t_end;
    if (dt) c.sim.dt = *dt;
    if (stride) c.sim.frame_stride = *stride;
    if (seed) c.sim.seed = *seed;
    if (no_projection) c.sim.projection = false;
    c.sim.threads = resolve_threads(threads);
    return c;
  }
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.precision(17);
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out = open_output(path);
  out << text << '\n';
}

fs::path default_summary_path(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".summary.json");
  return p;
}

int simulate_command(const Source& src, const fs::path& out_path,
                     std::string summary_path, const std::string& full_state,
                     std::ostream& out, std::ostream& err) {
  const Scenario s = build_scenario(src.resolve());
  if (summary_path.empty()) summary_path = default_summary_path(out_path).string();

  const auto start = std::chrono::steady_clock::now();
  try {
    const Trajectory traj = simulate(s.ensemble, s.params, s.sim);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    {
      std::ofstream csv = open_output(out_path);
      write_frames_csv(csv, traj);
    }
    if (!full_state.empty()) {
      std::ofstream state = open_output(full_state);
      write_full_state_csv(state, traj);
    }
    const RunSummary summary = summarize(s, traj, wall);
    write_text(summary_path, summary_json(summary));

    out << "wrote " << traj.frames.size() << " frames to " << out_path.string()
        << ", summary to " << summary_path << '\n';

    const bool drift_ok = traj.max_step_drift.radial <= kRadialTolerance &&
                          traj.max_step_drift.tangency <= kTangencyTolerance;
    const bool energy_ok = traj.max_relative_energy_increase <= 1e-8;
    if (!drift_ok || !energy_ok) {
      err << "invariant failure:";
      if (!drift_ok) {
        err << " constraint drift " << traj.max_step_drift.radial << " / "
            << traj.max_step_drift.tangency;
      }
      if (!energy_ok) {
        err << " energy increase " << traj.max_relative_energy_increase;
      }
      err << '\n';
      return kInvariantFailure;
    }
    return kOk;
  } catch (const SimulationAborted& abort) {
    std::ofstream csv = open_output(out_path);
    write_frames_csv(csv, abort.partial());
    err << "aborted: " << abort.what() << " (partial frames in "
        << out_path.string() << ")\n";
    return kAntipodalAbort;
  }
}

int check_command(const Source& src, const std::string& out_path,
                  std::ostream& out) {
  const Scenario s = build_scenario(src.resolve());
  const std::string json = admissibility_json(check_initial(s.ensemble, s.params));
  if (out_path.empty()) {
    out << json << '\n';
  } else {
    write_text(out_path, json);
  }
  return kOk;
}

int fit_command(const std::string& csv_path, const std::string& column,
                const std::vector<double>& window, std::ostream& out) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot read " + csv_path);
  const CsvTable table = read_csv(in);
  const std::vector<TimeValue> series = table.series("t", column);
  if (series.empty()) throw ConfigError("CSV has no rows");
  const std::pair<double, double> w =
      window.empty() ? default_fit_window(series.back().t)
                     : std::pair<double, double>{window[0], window[1]};
  out << fit_json(fit_decay_rate(series, w), w) << '\n';
  return kOk;
}

int verify_command(std::uint64_t seed, unsigned threads, std::ostream& out) {
  const auto results = run_invariant_suite(seed, resolve_threads(threads));
  std::size_t passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
        << '\n';
    if (r.passed) ++passed;
  }
  out << passed << " passed, " << results.size() - passed << " failed\n";
  return passed == results.size() ? kOk : kInvariantFailure;
}

int preset_command(const std::string& name, const std::string& out_path,
                   std::ostream& out) {
  const std::string text = emit_config(preset_config(name));
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file = open_output(out_path);
    file << text;
  }
  return kOk;
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPHEREFLOCK_THREADS"); env && *env) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (*end != '\0' || cap < 1) {
      throw ConfigError(std::string("SPHEREFLOCK_THREADS must be a positive integer, got '") +
                        env + "'");
    }
    n = std::min<unsigned>(n, static_cast<unsigned>(std::min(cap, 1L << 16)));
  }
  return n;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Flocking on the unit sphere with a bonding force", "sphereflock"};
  app.require_subcommand(1);

  Source sim_src;
  std::string sim_out = "frames.csv";
  std::string sim_summary;
  std::string sim_full_state;
  auto* sim = app.add_subcommand("simulate", "Integrate a scenario and write frames CSV + summary JSON");
  sim_src.add_to(*sim, true);
  sim->add_option("--out", sim_out, "Frames CSV path")->capture_default_str();
  sim->add_option("--summary", sim_summary,
                  "Summary JSON path (default: <out>.summary.json)");
  sim->add_option("--full-state", sim_full_state,
                  "Also write per-agent positions and velocities to this CSV");

  Source check_src;
  std::string check_out;
  auto* check = app.add_subcommand("check", "Evaluate the admissibility conditions of the initial data");
  check_src.add_to(*check, false);
  check->add_option("--out", check_out, "JSON path (default: stdout)");

  std::string fit_csv;
  std::string fit_column = "D_x";
  std::vector<double> fit_window;
  auto* fit = app.add_subcommand("fit-rate", "Fit an exponential decay rate to a frames CSV");
  fit->add_option("csv", fit_csv, "Frames CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--column", fit_column, "Column to fit")->capture_default_str();
  fit->add_option("--window", fit_window, "Time window (default: [t_end/8, t_end])")
      ->expected(2);

  std::uint64_t verify_seed = 20240101;
  unsigned verify_threads = 0;
  auto* verify = app.add_subcommand("verify", "Run the invariant self-check suite");
  verify->add_option("--seed", verify_seed, "Random seed")->capture_default_str();
  verify->add_option("--threads", verify_threads, "Worker threads");

  std::string preset_name;
  std::string preset_out;
  auto* preset = app.add_subcommand("preset", "Write a built-in configuration file");
  preset->add_option("name", preset_name, "paper-sigma1 or paper-sigma5")->required();
  preset->add_option("--out", preset_out, "Output path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*sim) return simulate_command(sim_src, sim_out, sim_summary, sim_full_state, out, err);
    if (*check) return check_command(check_src, check_out, out);
    if (*fit) return fit_command(fit_csv, fit_column, fit_window, out);
    if (*verify) return verify_command(verify_seed, verify_threads, out);
    if (*preset) return preset_command(preset_name, preset_out, out);
  } catch (const AntipodalPair& e) {
    err << "aborted: " << e.what() << '\n';
    return kAntipodalAbort;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace sphereflock::cli
