#include "mapflock/world.hpp"

#include <algorithm>
#include <limits>

#include "mapflock/errors.hpp"

namespace mapflock {

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::M0: return "M0";
    case Mode::M1: return "M1";
    case Mode::M2: return "M2";
  }
  return "?";
}

GoalSpec GoalSpec::cluster(int id, Vec2 centroid) {
  GoalSpec g;
  g.kind = Kind::ClusterTarget;
  g.target_cluster = id;
  g.q1r = centroid;
  return g;
}

GoalSpec GoalSpec::bridge(int first, Vec2 first_centroid, int second, Vec2 second_centroid) {
  if (first == second) throw ConfigError("bridge edge endpoints must be distinct clusters");
  GoalSpec g;
  g.kind = Kind::BridgeEdge;
  g.edge_first = first;
  g.edge_second = second;
  g.q1r = first_centroid;
  g.q2r = second_centroid;
  return g;
}

int World::alive_count() const {
  return static_cast<int>(std::count_if(maps.begin(), maps.end(), [](const MapState& m) { return m.alive; }));
}

World generate_scenario(const ScenarioConfig& config, Rng& rng) {
  config.validate();

  World world;
  const int cluster_count = static_cast<int>(config.cluster_centers.size());
  world.clusters.reserve(cluster_count);
  for (int k = 0; k < cluster_count; ++k) {
    world.clusters.push_back({k, config.cluster_centers[k], {}});
  }

  world.msds.reserve(static_cast<std::size_t>(cluster_count) * config.msds_per_cluster);
  for (auto& cluster : world.clusters) {
    for (int n = 0; n < config.msds_per_cluster; ++n) {
      const double dx = config.cluster_sigma * rng.normal();
      const double dy = config.cluster_sigma * rng.normal();
      const int id = static_cast<int>(world.msds.size());
      world.msds.push_back({id, cluster.centroid + Vec2{dx, dy}, cluster.id, std::nullopt});
      cluster.members.push_back(id);
    }
  }

  world.maps.resize(config.map_count);
  const double hw = config.map_spawn_halfwidth;
  for (int i = 0; i < config.map_count; ++i) {
    auto& m = world.maps[i];
    m.id = i;
    m.height = config.map_height;
    m.pos.x = config.map_spawn_center.x + rng.uniform(-hw, hw);
    m.pos.y = config.map_spawn_center.y + rng.uniform(-hw, hw);
  }
  const double v = config.initial_speed_range;
  for (auto& m : world.maps) {
    m.vel.x = rng.uniform(-v, v);
    m.vel.y = rng.uniform(-v, v);
  }

  for (auto& m : world.maps) {
    int nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : world.clusters) {
      const double dist = distance(m.pos, c.centroid);
      if (dist < best) {
        best = dist;
        nearest = c.id;
      }
    }
    m.mode = Mode::M0;
    m.goal = GoalSpec::cluster(nearest, world.clusters[nearest].centroid);
  }
  return world;
}

std::vector<std::vector<int>> neighbors(std::span<const MapState> maps, double r) {
  std::vector<std::vector<int>> result(maps.size());
  const double r2 = r * r;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!maps[i].alive) continue;
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      if (!maps[j].alive) continue;
      if (squared_norm(maps[i].pos - maps[j].pos) <= r2) {
        result[i].push_back(static_cast<int>(j));
        result[j].push_back(static_cast<int>(i));
      }
    }
  }
  return result;
}

}  // namespace mapflock
