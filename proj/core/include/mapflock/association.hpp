#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mapflock/world.hpp"

namespace mapflock {

struct Assignment {
  std::vector<std::optional<int>> msd_to_map;  // indexed by MSD id
  std::vector<int> load;                       // N_u, indexed by MAP id
  int assigned = 0;
  double coverage_ratio = 0.0;                 // R_c = assigned / M
  std::vector<double> cluster_coverage;        // r_g, indexed by cluster id
};

// Every MSD attaches to the alive MAP within 3-D range r that maximises
// rho * dist^-eta; ties go to the lowest MAP id. MSDs with nothing in range
// stay unassigned. Capacity is not enforced here.
Assignment assign_msds(std::span<const MsdState> msds, std::span<const MapState> maps,
                       std::span<const Cluster> clusters, double rho, double eta, double r);

// Fraction of the cluster's members served by any MAP. Throws
// std::out_of_range for an unknown cluster id.
double goal_coverage(const Assignment& assignment, int cluster_id);

// Writes assignment.msd_to_map back into MsdState::assigned_map.
void apply_assignment(const Assignment& assignment, std::span<MsdState> msds);

}  // namespace mapflock
