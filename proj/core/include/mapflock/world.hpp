#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "mapflock/config.hpp"
#include "mapflock/rng.hpp"
#include "mapflock/vec2.hpp"

namespace mapflock {

enum class Mode { M0, M1, M2 };  // dynamic, connectivity, static

const char* mode_name(Mode mode);

// Target of the goal term. A cluster target pulls toward one centroid; a
// bridge edge pulls toward the segment between two centroids.
struct GoalSpec {
  enum class Kind { ClusterTarget, BridgeEdge };

  Kind kind = Kind::ClusterTarget;
  int target_cluster = -1;
  int edge_first = -1;
  int edge_second = -1;
  Vec2 q1r;
  Vec2 q2r;
  Vec2 p1r;
  Vec2 p2r;

  static GoalSpec cluster(int id, Vec2 centroid);
  static GoalSpec bridge(int first, Vec2 first_centroid, int second, Vec2 second_centroid);

  bool is_bridge() const { return kind == Kind::BridgeEdge; }
  friend bool operator==(const GoalSpec&, const GoalSpec&) = default;
};

struct MapState {
  int id = 0;
  Vec2 pos;
  double height = 20.0;
  Vec2 vel;
  Mode mode = Mode::M0;
  GoalSpec goal;
  std::set<int> achieved_goals;
  bool alive = true;

  friend bool operator==(const MapState&, const MapState&) = default;
};

struct MsdState {
  int id = 0;
  Vec2 pos;
  int cluster = 0;
  std::optional<int> assigned_map;

  friend bool operator==(const MsdState&, const MsdState&) = default;
};

struct Cluster {
  int id = 0;
  Vec2 centroid;
  std::vector<int> members;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

// MAP ids equal their index in `maps`, MSD ids their index in `msds`,
// cluster ids their index in `clusters`.
struct World {
  std::vector<Cluster> clusters;
  std::vector<MsdState> msds;
  std::vector<MapState> maps;
  double t = 0.0;
  long step_index = 0;

  int alive_count() const;
  friend bool operator==(const World&, const World&) = default;
};

// Draw order: cluster members (cluster by cluster, x then y per MSD), then
// MAP positions (x then y per MAP), then MAP velocities (x then y per MAP).
// Every MAP starts in M0 aimed at the cluster centre nearest to its spawn
// point (lowest id on ties).
World generate_scenario(const ScenarioConfig& config, Rng& rng);

// N_i = { j != i : alive, |q_i - q_j| <= r } using horizontal distance;
// indexed by MAP id. Dead MAPs get empty sets.
std::vector<std::vector<int>> neighbors(std::span<const MapState> maps, double r);

}  // namespace mapflock
