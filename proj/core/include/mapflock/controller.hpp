#pragma once

#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "mapflock/config.hpp"
#include "mapflock/network.hpp"
#include "mapflock/world.hpp"

namespace mapflock {

struct NeighborInfo {
  Vec2 rel_pos;  // q_j - q_i
  Vec2 vel;      // p_j
  int load = 0;  // N_u^j
  double weight = 1.0;  // a_ij
};

// What MAP i learns from its neighbours in one step.
struct NeighborSnapshot {
  Vec2 own_vel;
  int own_load = 0;
  std::vector<NeighborInfo> neighbors;
};

// f_i: spacing action plus attraction toward overloaded neighbours, both
// along the sigma-gradient of q_j - q_i.
Vec2 attract_repulse(const NeighborSnapshot& snapshot, const ControlParams& params);

// g_i: velocity consensus gated by spare capacity of MAP i.
Vec2 velocity_consensus(const NeighborSnapshot& snapshot, const ControlParams& params);

// h_i for M0/M2: c1 (q_r - q) + c2 (p_r - p) with p_r = 0.
Vec2 goal_term_point(const Vec2& pos, const Vec2& vel, const GoalSpec& goal,
                     const ControlParams& params);

// h_i for M1: gradient descent on the connectivity potential plus velocity
// damping split between both endpoints.
Vec2 goal_term_bridge(const Vec2& pos, const Vec2& vel, const GoalSpec& goal,
                      const ControlParams& params);

// E_c = k (|q1 - q|_s + |q2 - q|_s - |q1 - q2|_s).
double connectivity_potential(const Vec2& pos, const GoalSpec& goal, const ControlParams& params);

// u_i = f_i + g_i + h_i with h chosen by the MAP's mode.
Vec2 control_input(const MapState& state, const NeighborSnapshot& snapshot,
                   const ControlParams& params);

// Number of M1 MAPs currently assigned to each MST edge, keyed by
// (first, second) with first < second.
using BridgeCounts = std::map<std::pair<int, int>, int>;

// Relays needed so that hops along the edge are no longer than r.
int required_relays(double edge_length, double r);

// Edge with the largest relay deficit (possibly negative once every edge is
// staffed); ties by nearest edge midpoint, then by edge ids.
// Throws ContractError on an empty tree.
GoalSpec select_bridge_edge(const Vec2& pos, const ClusterMst& mst, const BridgeCounts& counts,
                            double r, std::span<const Cluster> clusters);

// Tree a MAP in M0 bridges over when it switches to M1: the MST of its
// achieved clusters, or, while that has no edges, the edge from its goal
// cluster to the nearest cluster it has not yet covered.
ClusterMst bridge_candidates(const std::set<int>& achieved, int goal_cluster,
                             std::span<const Cluster> clusters);

struct ModeContext {
  std::span<const Cluster> clusters;
  BridgeCounts* bridge_counts = nullptr;  // updated when a MAP enters M1
  double r = 24.0;
};

struct ModeDecision {
  Mode mode = Mode::M0;
  GoalSpec goal;
  std::set<int> achieved_goals;
};

// One pass of the mode machine for a single MAP. Goal coverage above r0
// marks the goal achieved; an M0 MAP then retargets (load < n0), becomes a
// bridge (n0 <= load < n1) or settles (load >= n1). M1 and M2 never change.
ModeDecision mode_switch(const MapState& state, double goal_coverage, int load,
                         const ModeThresholds& thresholds, const ModeContext& context);

}  // namespace mapflock
