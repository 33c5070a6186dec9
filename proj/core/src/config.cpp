#include "sphereflock/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sphereflock/errors.hpp"

namespace sphereflock {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string fmt(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

class LineError {
 public:
  explicit LineError(std::size_t line) : line_(line) {}
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::size_t line_;
};

double parse_number(std::string_view s, const LineError& where) {
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    where.fail("expected a number, got '" + std::string(s) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view s, const LineError& where) {
  std::uint64_t value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    where.fail("expected a nonnegative integer, got '" + std::string(s) + "'");
  }
  return value;
}

Vec3 parse_vec3(std::string_view s, const LineError& where) {
  Vec3 out;
  int count = 0;
  while (true) {
    s = trim(s);
    if (s.empty()) break;
    const auto end = s.find_first_of(" \t");
    const std::string_view token = s.substr(0, end);
    if (count == 3) where.fail("expected three components");
    out[count++] = parse_number(token, where);
    if (end == std::string_view::npos) break;
    s = s.substr(end);
  }
  if (count != 3) where.fail("expected three components");
  return out;
}

void put_indexed(std::vector<Vec3>& list, std::string_view index,
                 const Vec3& value, const LineError& where) {
  const std::uint64_t i = parse_unsigned(index, where);
  if (i < 1 || i > 1000000) where.fail("agent index out of range");
  if (list.size() < i) list.resize(i, Vec3::Constant(std::nan("")));
  list[i - 1] = value;
}

}  // namespace

Config parse_config(std::string_view text) {
  Config c;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const LineError where(line_no);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') where.fail("unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "kernel" && section != "params" && section != "sim" &&
          section != "scenario") {
        where.fail("unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) where.fail("expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) where.fail("empty key");

    if (section == "kernel") {
      if (key == "name") {
        c.kernel.name = std::string(value);
      } else {
        c.kernel.params[key] = parse_number(value, where);
      }
    } else if (section == "params") {
      if (key != "sigma") where.fail("unknown key '" + key + "' in [params]");
      c.sigma = parse_number(value, where);
    } else if (section == "sim") {
      if (key == "dt") {
        c.sim.dt = parse_number(value, where);
      } else if (key == "t_end") {
        c.sim.t_end = parse_number(value, where);
      } else if (key == "projection") {
        if (value == "on") {
          c.sim.projection = true;
        } else if (value == "off") {
          c.sim.projection = false;
        } else {
          where.fail("projection must be 'on' or 'off'");
        }
      } else if (key == "frame_stride") {
        c.sim.frame_stride = parse_unsigned(value, where);
      } else if (key == "seed") {
        c.sim.seed = parse_unsigned(value, where);
      } else {
        where.fail("unknown key '" + key + "' in [sim]");
      }
    } else if (section == "scenario") {
      if (key == "type") {
        c.scenario.type = std::string(value);
      } else if (key == "label") {
        c.scenario.label = std::string(value);
      } else if (key == "n") {
        c.scenario.n = parse_unsigned(value, where);
      } else if (key == "pos_spread") {
        c.scenario.pos_spread = parse_number(value, where);
      } else if (key == "vel_scale") {
        c.scenario.vel_scale = parse_number(value, where);
      } else if (key.starts_with("x.")) {
        put_indexed(c.scenario.x, std::string_view(key).substr(2),
                    parse_vec3(value, where), where);
      } else if (key.starts_with("v.")) {
        put_indexed(c.scenario.v, std::string_view(key).substr(2),
                    parse_vec3(value, where), where);
      } else {
        where.fail("unknown key '" + key + "' in [scenario]");
      }
    } else {
      where.fail("key outside of a section");
    }
  }
  return c;
}

std::string emit_config(const Config& c) {
  std::ostringstream out;
  out << "[kernel]\nname = " << c.kernel.name << "\n";
  for (const auto& [key, value] : c.kernel.params) {
    out << key << " = " << fmt(value) << "\n";
  }
  out << "\n[params]\nsigma = " << fmt(c.sigma) << "\n";
  out << "\n[sim]\n"
      << "dt = " << fmt(c.sim.dt) << "\n"
      << "t_end = " << fmt(c.sim.t_end) << "\n"
      << "projection = " << (c.sim.projection ? "on" : "off") << "\n"
      << "frame_stride = " << c.sim.frame_stride << "\n"
      << "seed = " << c.sim.seed << "\n";
  out << "\n[scenario]\ntype = " << c.scenario.type << "\n";
  if (!c.scenario.label.empty()) out << "label = " << c.scenario.label << "\n";
  if (c.scenario.type == "random") {
    out << "n = " << c.scenario.n << "\n"
        << "pos_spread = " << fmt(c.scenario.pos_spread) << "\n"
        << "vel_scale = " << fmt(c.scenario.vel_scale) << "\n";
  }
  const auto emit_list = [&](const char* prefix, const std::vector<Vec3>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      out << prefix << (i + 1) << " = " << fmt(list[i].x()) << " "
          << fmt(list[i].y()) << " " << fmt(list[i].z()) << "\n";
    }
  };
  emit_list("x.", c.scenario.x);
  emit_list("v.", c.scenario.v);
  return out.str();
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::string> preset_names() { return {"paper-sigma1", "paper-sigma5"}; }

Config preset_config(const std::string& name) {
  Config c;
  c.kernel = {"paper", {}};
  c.sim = SimConfig{};
  c.scenario.type = "paper";
  c.scenario.label = name;
  if (name == "paper-sigma1") {
    c.sigma = 1.0;
  } else if (name == "paper-sigma5") {
    c.sigma = 5.0;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return c;
}

Scenario build_scenario(const Config& c) {
  check_sim_config(c.sim);
  if (!(c.sigma >= 0.0)) throw ConfigError("sigma must be nonnegative");
  ModelParams params{make_kernel(c.kernel.name, c.kernel.params), c.sigma};

  Scenario s;
  const std::string& type = c.scenario.type;
  if (type == "paper") {
    if (c.kernel.name != "paper") {
      throw ConfigError("scenario type 'paper' uses the built-in kernel");
    }
    s = paper_scenario(c.sigma);
  } else if (type == "random") {
    if (c.scenario.n < 1) throw ConfigError("random scenario needs n >= 1");
    s = random_scenario(c.sim.seed, c.scenario.n, c.scenario.pos_spread,
                        c.scenario.vel_scale, params);
  } else if (type == "explicit") {
    const auto& x = c.scenario.x;
    const auto& v = c.scenario.v;
    if (x.empty() || x.size() != v.size()) {
      throw ConfigError("explicit scenario needs matching x.<i> and v.<i>");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i].allFinite() || !v[i].allFinite()) {
        throw ConfigError("explicit scenario is missing agent " +
                          std::to_string(i + 1));
      }
    }
    s.ensemble = ensemble_from_raw(x, v, &s.adjustment);
    s.params = params;
    s.label = "explicit";
  } else {
    throw ConfigError("unknown scenario type '" + type + "'");
  }
  s.sim = c.sim;
  if (!c.scenario.label.empty()) s.label = c.scenario.label;
  return s;
}

}  // namespace sphereflock
