#include "mapflock/association.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mapflock {

Assignment assign_msds(std::span<const MsdState> msds, std::span<const MapState> maps,
                       std::span<const Cluster> clusters, double rho, double eta, double r) {
  Assignment out;
  out.msd_to_map.assign(msds.size(), std::nullopt);
  out.load.assign(maps.size(), 0);
  out.cluster_coverage.assign(clusters.size(), 0.0);

  const double r2 = r * r;
  for (std::size_t m = 0; m < msds.size(); ++m) {
    int best = -1;
    double best_score = 0.0;
    for (std::size_t k = 0; k < maps.size(); ++k) {
      const auto& map = maps[k];
      if (!map.alive) continue;
      const double d2 = squared_norm(msds[m].pos - map.pos) + map.height * map.height;
      if (d2 > r2) continue;
      const double score = rho * std::pow(std::sqrt(d2), -eta);
      if (best < 0 || score > best_score) {
        best = static_cast<int>(k);
        best_score = score;
      }
    }
    if (best >= 0) {
      out.msd_to_map[m] = best;
      ++out.load[best];
      ++out.assigned;
    }
  }

  out.coverage_ratio = msds.empty() ? 0.0 : static_cast<double>(out.assigned) / static_cast<double>(msds.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& members = clusters[c].members;
    if (members.empty()) continue;
    int served = 0;
    for (int id : members) served += out.msd_to_map[id].has_value() ? 1 : 0;
    out.cluster_coverage[c] = static_cast<double>(served) / static_cast<double>(members.size());
  }
  return out;
}

double goal_coverage(const Assignment& assignment, int cluster_id) {
  if (cluster_id < 0 || static_cast<std::size_t>(cluster_id) >= assignment.cluster_coverage.size()) {
    throw std::out_of_range("unknown cluster id " + std::to_string(cluster_id));
  }
  return assignment.cluster_coverage[cluster_id];
}

void apply_assignment(const Assignment& assignment, std::span<MsdState> msds) {
  for (std::size_t m = 0; m < msds.size() && m < assignment.msd_to_map.size(); ++m) {
    msds[m].assigned_map = assignment.msd_to_map[m];
  }
}

}  // namespace mapflock
