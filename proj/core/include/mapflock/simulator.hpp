#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mapflock/association.hpp"
#include "mapflock/controller.hpp"
#include "mapflock/config.hpp"
#include "mapflock/world.hpp"

namespace mapflock {

struct MetricsSample {
  double t = 0.0;
  double coverage_ratio = 0.0;
  double lambda2 = 0.0;
  std::vector<double> cluster_coverage;
  int alive = 0;
  std::array<int, 3> mode_census{};  // M0, M1, M2

  friend bool operator==(const MetricsSample&, const MetricsSample&) = default;
};

struct TrajectoryRow {
  double t = 0.0;
  int map_id = 0;
  Vec2 pos;
  Vec2 vel;
  Mode mode = Mode::M0;
  bool alive = true;

  friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

struct ConvergenceReport {
  bool converged = false;
  double time = 0.0;  // end of the first window meeting the criterion
};

// One failure injection as applied. Coverage is measured on the frozen
// positions right before and right after the MAPs are disabled.
struct AppliedFailure {
  double time = 0.0;
  double fraction = 0.0;
  std::vector<int> failed_ids;
  double coverage_before = 0.0;
  double coverage_after = 0.0;
};

struct RunResult {
  std::vector<MetricsSample> samples;
  World final_world;
  std::vector<TrajectoryRow> trajectory;
  ConvergenceReport convergence;
  std::vector<AppliedFailure> applied_failures;
};

struct RunOptions {
  bool record_trajectory = false;
};

MetricsSample measure(const World& world, const ScenarioConfig& config);

// Snapshot each alive MAP observes from its neighbours.
std::vector<NeighborSnapshot> neighbor_snapshots(const World& world, const Assignment& assignment,
                                                 double r);

// Unions achieved-goal sets over each connected component of the MAP graph.
void share_achieved_goals(World& world, double r);

// One pass of the control loop: assignment, goal sharing, mode switching,
// control from the common pre-step snapshot, forward Euler, metrics on the
// post-step state. Throws SimulationDiverged on non-finite state.
MetricsSample step(World& world, const ScenarioConfig& config);

// Disables floor(fraction * alive) uniformly chosen alive MAPs. Returns the
// ids that failed.
std::vector<int> inject_failures(World& world, double fraction, Rng& rng);

// Window criterion on R_c spread and mode changes.
ConvergenceReport detect_convergence(const std::vector<MetricsSample>& samples,
                                     const ScenarioConfig& config);

// generate_scenario then step until t_end, applying scheduled failures at
// the first step whose start time reaches the scheduled time.
RunResult run(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace mapflock
