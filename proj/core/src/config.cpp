#include "mapflock/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mapflock/errors.hpp"

namespace mapflock {
namespace {

constexpr std::string_view kEchoPrefix = "config.";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("key '" + std::string(key) + "': not a number: '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw ConfigError("key '" + std::string(key) + "': value must be finite");
  }
  return value;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  Int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("key '" + std::string(key) + "': not an integer: '" + std::string(text) + "'");
  }
  return value;
}

Vec2 parse_vec(std::string_view key, std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw ConfigError("key '" + std::string(key) + "': expected 'x,y', got '" + std::string(text) + "'");
  }
  return {parse_double(key, parts[0]), parse_double(key, parts[1])};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Vec2& v) { return fmt(v.x) + "," + fmt(v.y); }

struct KeyHandler {
  std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)> parse;
  std::function<std::string(const ScenarioConfig&)> format;
};

#define MAPFLOCK_DOUBLE_KEY(name, member)                                                       \
  {                                                                                            \
    name, {                                                                                    \
      [](ScenarioConfig& c, std::string_view k, std::string_view v) { c.member = parse_double(k, v); }, \
          [](const ScenarioConfig& c) { return fmt(c.member); }                               \
    }                                                                                          \
  }

#define MAPFLOCK_INT_KEY(name, member)                                                          \
  {                                                                                            \
    name, {                                                                                    \
      [](ScenarioConfig& c, std::string_view k, std::string_view v) {                          \
        c.member = parse_int<decltype(c.member)>(k, v);                                        \
      },                                                                                       \
          [](const ScenarioConfig& c) { return std::to_string(c.member); }                    \
    }                                                                                          \
  }

const std::vector<std::pair<std::string, KeyHandler>>& handlers() {
  static const std::vector<std::pair<std::string, KeyHandler>> table = {
      {"cluster_centers",
       {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
          c.cluster_centers.clear();
          for (auto item : split(v, ';')) {
            if (!item.empty()) c.cluster_centers.push_back(parse_vec(k, item));
          }
        },
        [](const ScenarioConfig& c) {
          std::string out;
          for (std::size_t i = 0; i < c.cluster_centers.size(); ++i) {
            if (i) out += "; ";
            out += fmt(c.cluster_centers[i]);
          }
          return out;
        }}},
      MAPFLOCK_INT_KEY("msds_per_cluster", msds_per_cluster),
      MAPFLOCK_DOUBLE_KEY("cluster_sigma", cluster_sigma),
      MAPFLOCK_INT_KEY("map_count", map_count),
      MAPFLOCK_DOUBLE_KEY("map_height", map_height),
      {"map_spawn_center",
       {[](ScenarioConfig& c, std::string_view k, std::string_view v) { c.map_spawn_center = parse_vec(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.map_spawn_center); }}},
      MAPFLOCK_DOUBLE_KEY("map_spawn_halfwidth", map_spawn_halfwidth),
      MAPFLOCK_DOUBLE_KEY("initial_speed_range", initial_speed_range),
      MAPFLOCK_INT_KEY("seed", seed),
      MAPFLOCK_DOUBLE_KEY("dt", dt),
      MAPFLOCK_DOUBLE_KEY("t_end", t_end),
      MAPFLOCK_DOUBLE_KEY("convergence_window", convergence_window),
      MAPFLOCK_DOUBLE_KEY("convergence_tolerance", convergence_tolerance),
      MAPFLOCK_DOUBLE_KEY("d", control.d),
      MAPFLOCK_DOUBLE_KEY("r", control.r),
      MAPFLOCK_DOUBLE_KEY("epsilon", control.epsilon),
      MAPFLOCK_DOUBLE_KEY("a", control.a),
      MAPFLOCK_DOUBLE_KEY("b", control.b),
      MAPFLOCK_DOUBLE_KEY("gamma", control.gamma),
      MAPFLOCK_INT_KEY("n_max", control.n_max),
      MAPFLOCK_DOUBLE_KEY("c1", control.c1),
      MAPFLOCK_DOUBLE_KEY("c2", control.c2),
      MAPFLOCK_DOUBLE_KEY("k", control.k),
      MAPFLOCK_DOUBLE_KEY("rho", control.rho),
      MAPFLOCK_DOUBLE_KEY("eta", control.eta),
      MAPFLOCK_DOUBLE_KEY("r0", thresholds.r0),
      MAPFLOCK_INT_KEY("n0", thresholds.n0),
      MAPFLOCK_INT_KEY("n1", thresholds.n1),
      {"failures",
       {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
          c.failures.clear();
          for (auto item : split(v, ';')) {
            if (item.empty()) continue;
            const auto parts = split(item, ':');
            if (parts.size() != 2) {
              throw ConfigError("key 'failures': expected 'time:fraction', got '" + std::string(item) + "'");
            }
            c.failures.push_back({parse_double(k, parts[0]), parse_double(k, parts[1])});
          }
        },
        [](const ScenarioConfig& c) {
          std::string out;
          for (std::size_t i = 0; i < c.failures.size(); ++i) {
            if (i) out += "; ";
            out += fmt(c.failures[i].time) + ":" + fmt(c.failures[i].fraction);
          }
          return out;
        }}},
  };
  return table;
}

#undef MAPFLOCK_DOUBLE_KEY
#undef MAPFLOCK_INT_KEY

const KeyHandler* find_handler(std::string_view key) {
  for (const auto& [name, handler] : handlers()) {
    if (name == key) return &handler;
  }
  return nullptr;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void ControlParams::validate() const {
  try {
    potential().validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  require(n_max >= 1, "n_max must be >= 1");
  require(c1 > 0.0 && c2 > 0.0 && k > 0.0, "c1, c2 and k must be > 0");
  require(rho > 0.0 && eta > 0.0, "rho and eta must be > 0");
  require(std::isfinite(c1) && std::isfinite(c2) && std::isfinite(k) && std::isfinite(rho) &&
              std::isfinite(eta),
          "control gains must be finite");
}

void ModeThresholds::validate() const {
  require(r0 > 0.0 && r0 <= 1.0, "r0 must lie in (0, 1]");
  require(0 < n0 && n0 < n1, "need 0 < n0 < n1");
}

void ScenarioConfig::validate() const {
  require(!cluster_centers.empty(), "at least one cluster centre is required");
  for (const auto& c : cluster_centers) require(is_finite(c), "cluster centres must be finite");
  require(msds_per_cluster > 0, "msds_per_cluster must be > 0");
  require(std::isfinite(cluster_sigma) && cluster_sigma >= 0.0, "cluster_sigma must be >= 0");
  require(map_count > 0, "map_count must be > 0");
  require(std::isfinite(map_height) && map_height > 0.0, "map_height must be > 0");
  require(is_finite(map_spawn_center), "map_spawn_center must be finite");
  require(std::isfinite(map_spawn_halfwidth) && map_spawn_halfwidth >= 0.0,
          "map_spawn_halfwidth must be >= 0");
  require(std::isfinite(initial_speed_range) && initial_speed_range >= 0.0,
          "initial_speed_range must be >= 0");
  require(std::isfinite(dt) && dt > 0.0, "dt must be > 0");
  require(std::isfinite(t_end) && t_end >= 0.0, "t_end must be >= 0");
  require(convergence_window > 0.0 && convergence_tolerance > 0.0,
          "convergence window and tolerance must be > 0");
  require(map_height < control.r, "map_height must be below the communication range");
  for (const auto& f : failures) {
    require(std::isfinite(f.time) && f.time >= 0.0, "failure times must be >= 0");
    require(f.fraction >= 0.0 && f.fraction <= 1.0, "failure fractions must lie in [0, 1]");
  }
  control.validate();
  thresholds.validate();
}

ScenarioConfig parse_config(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  bool echo_mode = false;
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    if (key.starts_with(kEchoPrefix)) echo_mode = true;
    entries.emplace_back(std::move(key), std::string(trim(line.substr(eq + 1))));
  }

  ScenarioConfig config;
  std::map<std::string, bool> seen;
  for (auto& [key, value] : entries) {
    if (echo_mode) {
      if (!key.starts_with(kEchoPrefix)) continue;
      key.erase(0, kEchoPrefix.size());
    }
    const auto* handler = find_handler(key);
    if (handler == nullptr) throw ConfigError("unknown key '" + key + "'");
    if (seen[key]) throw ConfigError("duplicate key '" + key + "'");
    seen[key] = true;
    handler->parse(config, key, value);
  }
  config.validate();
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string format_config(const ScenarioConfig& config, std::string_view key_prefix) {
  std::string out;
  for (const auto& [name, handler] : handlers()) {
    out += std::string(key_prefix) + name + "=" + handler.format(config) + "\n";
  }
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, handler] : handlers()) k.push_back(name);
    return k;
  }();
  return keys;
}

}  // namespace mapflock
