#include "mapflock/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "mapflock/errors.hpp"

namespace mapflock {

Eigen::VectorXd MapGraph::degrees() const { return adjacency.rowwise().sum(); }

Eigen::MatrixXd MapGraph::laplacian() const {
  Eigen::MatrixXd lap = -adjacency;
  lap.diagonal() += degrees();
  return lap;
}

MapGraph build_graph(std::span<const MapState> maps, double r) {
  MapGraph g;
  for (const auto& m : maps) {
    if (m.alive) g.nodes.push_back(m.id);
  }
  const int n = g.size();
  g.adjacency = Eigen::MatrixXd::Zero(n, n);
  const double r2 = r * r;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (squared_norm(maps[g.nodes[i]].pos - maps[g.nodes[j]].pos) <= r2) {
        g.adjacency(i, j) = 1.0;
        g.adjacency(j, i) = 1.0;
      }
    }
  }
  return g;
}

MapGraph graph_from_adjacency(Eigen::MatrixXd adjacency) {
  MapGraph g;
  g.nodes.resize(adjacency.rows());
  std::iota(g.nodes.begin(), g.nodes.end(), 0);
  g.adjacency = std::move(adjacency);
  return g;
}

std::vector<int> connected_components(const MapGraph& graph) {
  const int n = graph.size();
  std::vector<int> label(n, -1);
  std::vector<int> stack;
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (label[v] < 0 && graph.adjacency(u, v) != 0.0) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

int component_count(const MapGraph& graph) {
  const auto labels = connected_components(graph);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

double fiedler_value(const MapGraph& graph, double tol) {
  const auto& a = graph.adjacency;
  if (a.rows() != a.cols()) throw ContractError("adjacency matrix is not square");
  if (a.size() > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() > 0.0) {
    throw ContractError("adjacency matrix is not symmetric");
  }
  if (graph.size() < 2 || component_count(graph) > 1) return 0.0;

  // Full symmetric decomposition (Householder tridiagonalisation + implicit
  // QR) is accurate to a few ulps of ||L||, far inside tol for n <= a few hundred.
  (void)tol;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(graph.laplacian(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ContractError("Laplacian eigensolve failed");
  return std::max(0.0, solver.eigenvalues()(1));
}

double ClusterMst::total_length() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.length;
  return total;
}

ClusterMst cluster_mst(std::span<const std::pair<int, Vec2>> covered_centroids) {
  std::vector<std::pair<int, Vec2>> nodes(covered_centroids.begin(), covered_centroids.end());
  std::sort(nodes.begin(), nodes.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

  std::vector<ClusterEdge> candidates;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      candidates.push_back({nodes[i].first, nodes[j].first, distance(nodes[i].second, nodes[j].second)});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const ClusterEdge& l, const ClusterEdge& r) {
    if (l.length != r.length) return l.length < r.length;
    if (l.first != r.first) return l.first < r.first;
    return l.second < r.second;
  });

  // Union-find over positions in `nodes`.
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto position = [&](int id) {
    return static_cast<std::size_t>(
        std::lower_bound(nodes.begin(), nodes.end(), id, [](const auto& n, int v) { return n.first < v; }) -
        nodes.begin());
  };

  ClusterMst mst;
  for (const auto& e : candidates) {
    const auto a = find(position(e.first));
    const auto b = find(position(e.second));
    if (a == b) continue;
    parent[a] = b;
    mst.edges.push_back(e);
    if (mst.edges.size() + 1 == nodes.size()) break;
  }
  return mst;
}

}  // namespace mapflock
