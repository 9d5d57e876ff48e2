#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mapflock/potential.hpp"
#include "mapflock/vec2.hpp"

namespace mapflock {

struct ControlParams {
  double d = 20.0;        // desired inter-MAP spacing [m]
  double r = 24.0;        // communication range [m]
  double epsilon = 0.1;   // sigma-norm parameter
  double a = 5.0;
  double b = 5.0;
  double gamma = 0.2;     // lower cutoff of the action bump
  int n_max = 80;         // serving capacity
  double c1 = 0.3;        // goal position gain
  double c2 = 0.6;        // goal velocity gain
  double k = 10.0;        // connectivity gain
  double rho = 1.0;       // transmit power [W]
  double eta = 3.5;       // path-loss exponent

  double c() const { return potential().c(); }
  PotentialParams potential() const { return {epsilon, a, b, gamma, d, r}; }
  void validate() const;
};

struct ModeThresholds {
  double r0 = 0.95;
  int n0 = 3;
  int n1 = 10;

  void validate() const;
};

struct FailureEvent {
  double time = 0.0;
  double fraction = 0.0;

  friend bool operator==(const FailureEvent&, const FailureEvent&) = default;
};

struct ScenarioConfig {
  std::vector<Vec2> cluster_centers{{0.0, 0.0}, {150.0, 0.0}, {0.0, 150.0}, {150.0, 150.0}};
  int msds_per_cluster = 500;
  double cluster_sigma = 12.0;
  int map_count = 100;
  double map_height = 20.0;
  Vec2 map_spawn_center{-150.0, 50.0};
  double map_spawn_halfwidth = 60.0;
  double initial_speed_range = 1.0;  // each velocity component ~ U[-v, v]
  std::uint64_t seed = 1;
  double dt = 0.1;
  double t_end = 60.0;
  double convergence_window = 5.0;
  double convergence_tolerance = 0.005;
  ControlParams control;
  ModeThresholds thresholds;
  std::vector<FailureEvent> failures;

  // Throws ConfigError on any violated invariant or non-finite value.
  void validate() const;
};

// Plain-text "key = value" format, '#' starts a comment. Keys may carry a
// "config." prefix; if any key does, every unprefixed key is ignored, which
// lets a run summary be fed back as a configuration. Unknown keys throw.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Serializes every key, so parse_config(format_config(c)) reproduces c
// exactly (doubles are written with round-trip precision).
std::string format_config(const ScenarioConfig& config, std::string_view key_prefix = "");

// Names of all recognised configuration keys, in serialization order.
const std::vector<std::string>& config_keys();

}  // namespace mapflock
