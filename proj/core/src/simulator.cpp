#include "mapflock/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mapflock/errors.hpp"
#include "mapflock/network.hpp"

namespace mapflock {
namespace {

MetricsSample sample_from(const World& world, const Assignment& assignment, double r) {
  MetricsSample s;
  s.t = world.t;
  s.coverage_ratio = assignment.coverage_ratio;
  s.cluster_coverage = assignment.cluster_coverage;
  s.lambda2 = fiedler_value(build_graph(world.maps, r));
  for (const auto& m : world.maps) {
    if (!m.alive) continue;
    ++s.alive;
    ++s.mode_census[static_cast<int>(m.mode)];
  }
  return s;
}

Assignment assign(const World& world, const ControlParams& control) {
  return assign_msds(world.msds, world.maps, world.clusters, control.rho, control.eta, control.r);
}

void append_trajectory(const World& world, std::vector<TrajectoryRow>& rows) {
  for (const auto& m : world.maps) rows.push_back({world.t, m.id, m.pos, m.vel, m.mode, m.alive});
}

}  // namespace

MetricsSample measure(const World& world, const ScenarioConfig& config) {
  return sample_from(world, assign(world, config.control), config.control.r);
}

std::vector<NeighborSnapshot> neighbor_snapshots(const World& world, const Assignment& assignment, double r) {
  const auto nbrs = neighbors(world.maps, r);
  std::vector<NeighborSnapshot> out(world.maps.size());
  for (const auto& m : world.maps) {
    if (!m.alive) continue;
    auto& snap = out[m.id];
    snap.own_vel = m.vel;
    snap.own_load = assignment.load[m.id];
    snap.neighbors.reserve(nbrs[m.id].size());
    for (int j : nbrs[m.id]) {
      const auto& other = world.maps[j];
      snap.neighbors.push_back({other.pos - m.pos, other.vel, assignment.load[j], 1.0});
    }
  }
  return out;
}

void share_achieved_goals(World& world, double r) {
  const auto graph = build_graph(world.maps, r);
  const auto labels = connected_components(graph);
  const int components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::set<int>> pooled(components);
  for (int i = 0; i < graph.size(); ++i) {
    const auto& goals = world.maps[graph.nodes[i]].achieved_goals;
    pooled[labels[i]].insert(goals.begin(), goals.end());
  }
  for (int i = 0; i < graph.size(); ++i) world.maps[graph.nodes[i]].achieved_goals = pooled[labels[i]];
}

MetricsSample step(World& world, const ScenarioConfig& config) {
  const auto& control = config.control;

  auto assignment = assign(world, control);
  apply_assignment(assignment, world.msds);

  share_achieved_goals(world, control.r);

  BridgeCounts bridges;
  for (const auto& m : world.maps) {
    if (m.alive && m.mode == Mode::M1) ++bridges[{m.goal.edge_first, m.goal.edge_second}];
  }
  // Ids are visited in order so bridge volunteers of one step spread across edges.
  const ModeContext context{world.clusters, &bridges, control.r};
  for (auto& m : world.maps) {
    if (!m.alive) continue;
    const double rg = m.goal.is_bridge() ? 0.0 : goal_coverage(assignment, m.goal.target_cluster);
    auto decision = mode_switch(m, rg, assignment.load[m.id], config.thresholds, context);
    m.mode = decision.mode;
    m.goal = std::move(decision.goal);
    m.achieved_goals = std::move(decision.achieved_goals);
  }

  const auto snapshots = neighbor_snapshots(world, assignment, control.r);
  std::vector<Vec2> inputs(world.maps.size());
  for (const auto& m : world.maps) {
    if (m.alive) inputs[m.id] = control_input(m, snapshots[m.id], control);
  }

  for (auto& m : world.maps) {
    if (!m.alive) continue;
    m.pos += config.dt * m.vel;
    m.vel += config.dt * inputs[m.id];
    if (!is_finite(m.pos) || !is_finite(m.vel)) {
      throw SimulationDiverged(world.step_index, "MAP " + std::to_string(m.id) + " left the finite range");
    }
  }
  ++world.step_index;
  world.t = static_cast<double>(world.step_index) * config.dt;

  assignment = assign(world, control);
  apply_assignment(assignment, world.msds);
  return sample_from(world, assignment, control.r);
}

std::vector<int> inject_failures(World& world, double fraction, Rng& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ParameterError("failure fraction must lie in [0, 1]");
  std::vector<int> alive;
  for (const auto& m : world.maps) {
    if (m.alive) alive.push_back(m.id);
  }
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(alive.size()) + 1e-9));
  // Partial Fisher-Yates: the first `count` slots become the failed set.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.index(alive.size() - i);
    std::swap(alive[i], alive[j]);
  }
  std::vector<int> failed(alive.begin(), alive.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(failed.begin(), failed.end());
  for (int id : failed) world.maps[id].alive = false;
  for (auto& msd : world.msds) {
    if (msd.assigned_map && !world.maps[*msd.assigned_map].alive) msd.assigned_map.reset();
  }
  return failed;
}

ConvergenceReport detect_convergence(const std::vector<MetricsSample>& samples, const ScenarioConfig& config) {
  const auto window = static_cast<std::size_t>(std::llround(config.convergence_window / config.dt));
  if (window == 0 || samples.size() <= window) return {};
  for (std::size_t end = window; end < samples.size(); ++end) {
    double lo = samples[end].coverage_ratio;
    double hi = lo;
    bool modes_steady = true;
    for (std::size_t i = end - window; i < end; ++i) {
      lo = std::min(lo, samples[i].coverage_ratio);
      hi = std::max(hi, samples[i].coverage_ratio);
      modes_steady = modes_steady && samples[i].mode_census == samples[end].mode_census &&
                     samples[i].alive == samples[end].alive;
    }
    if (modes_steady && hi - lo < config.convergence_tolerance) return {true, samples[end].t};
  }
  return {};
}

RunResult run(const ScenarioConfig& config, const RunOptions& options) {
  Rng rng(config.seed);
  RunResult result;
  World world = generate_scenario(config, rng);

  const auto steps = static_cast<long>(std::ceil(config.t_end / config.dt - 1e-9));
  result.samples.reserve(static_cast<std::size_t>(steps) + 1);
  result.samples.push_back(measure(world, config));
  if (options.record_trajectory) append_trajectory(world, result.trajectory);

  auto schedule = config.failures;
  std::stable_sort(schedule.begin(), schedule.end(),
                   [](const FailureEvent& l, const FailureEvent& r) { return l.time < r.time; });
  std::size_t next_failure = 0;

  for (long k = 0; k < steps; ++k) {
    while (next_failure < schedule.size() && schedule[next_failure].time <= world.t + 1e-9) {
      AppliedFailure applied{world.t, schedule[next_failure].fraction, {}, 0.0, 0.0};
      applied.coverage_before = measure(world, config).coverage_ratio;
      applied.failed_ids = inject_failures(world, applied.fraction, rng);
      applied.coverage_after = measure(world, config).coverage_ratio;
      result.applied_failures.push_back(std::move(applied));
      ++next_failure;
    }
    result.samples.push_back(step(world, config));
    if (options.record_trajectory) append_trajectory(world, result.trajectory);
  }

  result.convergence = detect_convergence(result.samples, config);
  result.final_world = std::move(world);
  return result;
}

}  // namespace mapflock
