#include "mapflock/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "mapflock/errors.hpp"
#include "mapflock/potential.hpp"

namespace mapflock {
namespace {

// 1 - alpha_{0,1}(|x^+|_s / |N_max|_s) for a load excess x.
double load_gate(int excess, const ControlParams& params) {
  const double positive = std::max(0, excess);
  const double ratio = sigma_norm(positive, params.epsilon).value /
                       sigma_norm(static_cast<double>(params.n_max), params.epsilon).value;
  return 1.0 - bump(ratio, 0.0, 1.0);
}

}  // namespace

Vec2 attract_repulse(const NeighborSnapshot& snapshot, const ControlParams& params) {
  const auto potential = params.potential();
  Vec2 force;
  for (const auto& nb : snapshot.neighbors) {
    const auto s = sigma_norm(nb.rel_pos, params.epsilon);
    const double spacing = phi_action(s.value, potential);
    const double overload = params.a * load_gate(nb.load - params.n_max, params);
    force += (spacing + overload) * s.gradient;
  }
  return force;
}

Vec2 velocity_consensus(const NeighborSnapshot& snapshot, const ControlParams& params) {
  const double gate = load_gate(params.n_max - snapshot.own_load, params);
  Vec2 sum;
  for (const auto& nb : snapshot.neighbors) sum += nb.weight * (nb.vel - snapshot.own_vel);
  return gate * sum;
}

Vec2 goal_term_point(const Vec2& pos, const Vec2& vel, const GoalSpec& goal, const ControlParams& params) {
  if (goal.kind != GoalSpec::Kind::ClusterTarget) {
    throw ContractError("goal_term_point needs a cluster-target goal");
  }
  return params.c1 * (goal.q1r - pos) + params.c2 * (goal.p1r - vel);
}

Vec2 goal_term_bridge(const Vec2& pos, const Vec2& vel, const GoalSpec& goal, const ControlParams& params) {
  if (goal.kind != GoalSpec::Kind::BridgeEdge) {
    throw ContractError("goal_term_bridge needs a bridge-edge goal");
  }
  if (goal.q1r == goal.q2r) throw ConfigError("bridge endpoints coincide");
  const auto to_first = sigma_norm(goal.q1r - pos, params.epsilon);
  const auto to_second = sigma_norm(goal.q2r - pos, params.epsilon);
  // k (q - q_ref) / (1 + eps |q - q_ref|_s) is exactly k times the sigma gradient.
  return params.k * to_first.gradient + params.k * to_second.gradient +
         0.5 * params.c2 * (goal.p1r - vel) + 0.5 * params.c2 * (goal.p2r - vel);
}

double connectivity_potential(const Vec2& pos, const GoalSpec& goal, const ControlParams& params) {
  const double eps = params.epsilon;
  return params.k * (sigma_norm(goal.q1r - pos, eps).value + sigma_norm(goal.q2r - pos, eps).value -
                     sigma_norm(goal.q1r - goal.q2r, eps).value);
}

Vec2 control_input(const MapState& state, const NeighborSnapshot& snapshot, const ControlParams& params) {
  if (!state.alive) throw ContractError("control_input called for a failed MAP");
  const Vec2 goal = state.mode == Mode::M1 ? goal_term_bridge(state.pos, state.vel, state.goal, params)
                                           : goal_term_point(state.pos, state.vel, state.goal, params);
  return attract_repulse(snapshot, params) + velocity_consensus(snapshot, params) + goal;
}

int required_relays(double edge_length, double r) {
  return std::max(0, static_cast<int>(std::ceil(edge_length / r)) - 1);
}

GoalSpec select_bridge_edge(const Vec2& pos, const ClusterMst& mst, const BridgeCounts& counts, double r,
                            std::span<const Cluster> clusters) {
  if (mst.empty()) throw ContractError("select_bridge_edge needs a non-empty tree");

  const ClusterEdge* best = nullptr;
  // (deficit desc, midpoint distance asc, ids asc); surplus relays spread to
  // the least-staffed edge
  std::tuple<int, double, int, int> best_key{};
  for (const auto& e : mst.edges) {
    const auto it = counts.find({e.first, e.second});
    const int assigned = it == counts.end() ? 0 : it->second;
    const int deficit = required_relays(e.length, r) - assigned;
    const Vec2 mid = 0.5 * (clusters[e.first].centroid + clusters[e.second].centroid);
    const std::tuple<int, double, int, int> key{-deficit, distance(pos, mid), e.first, e.second};
    if (best == nullptr || key < best_key) {
      best = &e;
      best_key = key;
    }
  }
  const ClusterEdge& chosen = *best;
  return GoalSpec::bridge(chosen.first, clusters[chosen.first].centroid, chosen.second,
                          clusters[chosen.second].centroid);
}

ClusterMst bridge_candidates(const std::set<int>& achieved, int goal_cluster, std::span<const Cluster> clusters) {
  std::vector<std::pair<int, Vec2>> covered;
  for (int id : achieved) covered.emplace_back(id, clusters[id].centroid);
  auto mst = cluster_mst(covered);
  if (!mst.empty() || goal_cluster < 0) return mst;

  const Vec2 from = clusters[goal_cluster].centroid;
  int target = -1;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : clusters) {
    if (c.id == goal_cluster || achieved.contains(c.id)) continue;
    const double dist = distance(from, c.centroid);
    if (dist < best) {
      best = dist;
      target = c.id;
    }
  }
  if (target >= 0) {
    mst.edges.push_back({std::min(goal_cluster, target), std::max(goal_cluster, target), best});
  }
  return mst;
}

ModeDecision mode_switch(const MapState& state, double goal_coverage, int load,
                         const ModeThresholds& thresholds, const ModeContext& context) {
  ModeDecision out{state.mode, state.goal, state.achieved_goals};
  if (state.goal.kind != GoalSpec::Kind::ClusterTarget || !(goal_coverage > thresholds.r0)) return out;

  const int goal_cluster = state.goal.target_cluster;
  out.achieved_goals.insert(goal_cluster);
  if (state.mode != Mode::M0) return out;

  if (load < thresholds.n0) {
    // Zero load is routed here too: an idle MAP moves on instead of parking.
    int target = -1;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : context.clusters) {
      if (out.achieved_goals.contains(c.id)) continue;
      const double dist = distance(state.pos, c.centroid);
      if (dist < best) {
        best = dist;
        target = c.id;
      }
    }
    if (target >= 0) {
      out.goal = GoalSpec::cluster(target, context.clusters[target].centroid);
      return out;
    }
    // Every cluster is covered: the idle MAP volunteers as a relay instead.
  }
  if (load < thresholds.n1) {
    const auto tree = bridge_candidates(out.achieved_goals, goal_cluster, context.clusters);
    if (tree.empty()) {
      out.mode = Mode::M2;
      return out;
    }
    static const BridgeCounts kNoCounts;
    const BridgeCounts& counts = context.bridge_counts != nullptr ? *context.bridge_counts : kNoCounts;
    out.goal = select_bridge_edge(state.pos, tree, counts, context.r, context.clusters);
    out.mode = Mode::M1;
    if (context.bridge_counts != nullptr) {
      ++(*context.bridge_counts)[{out.goal.edge_first, out.goal.edge_second}];
    }
  } else {
    out.mode = Mode::M2;
  }
  return out;
}

}  // namespace mapflock
