#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mapflock/world.hpp"

namespace mapflock {

// Disk-model graph over the alive MAPs. Row/column i corresponds to MAP id
// nodes[i].
struct MapGraph {
  std::vector<int> nodes;
  Eigen::MatrixXd adjacency;

  int size() const { return static_cast<int>(nodes.size()); }
  Eigen::VectorXd degrees() const;
  Eigen::MatrixXd laplacian() const;
};

MapGraph build_graph(std::span<const MapState> maps, double r);
MapGraph graph_from_adjacency(Eigen::MatrixXd adjacency);

// Component label per node (labels are 0..count-1 in order of first node).
std::vector<int> connected_components(const MapGraph& graph);
int component_count(const MapGraph& graph);

// Second-smallest Laplacian eigenvalue. Exactly 0 for graphs with fewer
// than two nodes or more than one component; otherwise computed by a dense
// symmetric eigensolver to within `tol`. Throws ContractError for a
// non-symmetric adjacency.
double fiedler_value(const MapGraph& graph, double tol = 1e-9);

struct ClusterEdge {
  int first = 0;   // first < second
  int second = 0;
  double length = 0.0;

  friend bool operator==(const ClusterEdge&, const ClusterEdge&) = default;
};

struct ClusterMst {
  std::vector<ClusterEdge> edges;

  double total_length() const;
  bool empty() const { return edges.empty(); }
};

// Kruskal over the complete Euclidean graph of the given (cluster id,
// centroid) pairs. Equal-length edges are taken in (first, second) order.
ClusterMst cluster_mst(std::span<const std::pair<int, Vec2>> covered_centroids);

}  // namespace mapflock
