#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "checks.hpp"
#include "mapflock/errors.hpp"
#include "mapflock/network.hpp"
#include "oracles.hpp"

using namespace mapflock;

namespace {

std::vector<MapState> line_of(int n, double spacing) {
  std::vector<MapState> maps(n);
  for (int i = 0; i < n; ++i) {
    maps[i].id = i;
    maps[i].pos = {spacing * i, 0.0};
  }
  return maps;
}

Eigen::MatrixXd complete(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  a.diagonal().setZero();
  return a;
}

}  // namespace

TEST(BuildGraph, EmptyFleet) {
  const auto g = build_graph(std::vector<MapState>{}, 24.0);
  EXPECT_EQ(g.size(), 0);
  EXPECT_EQ(fiedler_value(g), 0.0);
  EXPECT_EQ(component_count(g), 0);
}

TEST(BuildGraph, PathAtExactRange) {
  const auto g = build_graph(line_of(3, 24.0), 24.0);
  Eigen::MatrixXd want(3, 3);
  want << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  EXPECT_EQ(g.adjacency, want);
  EXPECT_EQ(g.degrees(), Eigen::Vector3d(1, 2, 1));
  EXPECT_NEAR(fiedler_value(g), 1.0, 1e-12);
}

TEST(BuildGraph, SkipsDeadMaps) {
  auto maps = line_of(4, 10.0);
  maps[1].alive = false;
  const auto g = build_graph(maps, 24.0);
  EXPECT_EQ(g.nodes, (std::vector<int>{0, 2, 3}));
  EXPECT_EQ(g.adjacency(0, 1), 1.0);  // 20 m apart
  EXPECT_EQ(g.adjacency(0, 2), 0.0);
}

TEST(Fiedler, KnownSpectra) {
  EXPECT_NEAR(fiedler_value(graph_from_adjacency(complete(4))), 4.0, 1e-12);
  EXPECT_NEAR(fiedler_value(graph_from_adjacency(complete(7))), 7.0, 1e-12);
  // oracle agrees with the closed form for K4
  const auto ev = oracle::jacobi_eigenvalues(oracle::laplacian({{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}}));
  EXPECT_NEAR(ev[0], 0.0, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev[i], 4.0, 1e-12);
}

TEST(Fiedler, DisconnectedIsExactlyZero) {
  auto maps = line_of(4, 20.0);
  maps[3].pos = {500.0, 0.0};
  const auto g = build_graph(maps, 24.0);
  EXPECT_EQ(component_count(g), 2);
  EXPECT_EQ(fiedler_value(g), 0.0);
}

TEST(Fiedler, TinyGraphsAreZero) {
  EXPECT_EQ(fiedler_value(build_graph(line_of(1, 0.0), 24.0)), 0.0);
  EXPECT_EQ(fiedler_value(graph_from_adjacency(Eigen::MatrixXd::Zero(2, 2))), 0.0);
  EXPECT_NEAR(fiedler_value(build_graph(line_of(2, 5.0), 24.0)), 2.0, 1e-12);
}

TEST(Fiedler, RejectsAsymmetricAdjacency) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 1) = 1.0;
  EXPECT_THROW(fiedler_value(graph_from_adjacency(a)), ContractError);
  EXPECT_THROW(fiedler_value(graph_from_adjacency(Eigen::MatrixXd::Zero(2, 3))), ContractError);
}

TEST(Fiedler, MatchesDenseOracle) {
  const auto r = checks::fiedler_matches_oracle(31337, 40, 150);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Fiedler, AddingAnEdgeNeverDecreases) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 25);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = (gen() % 3 == 0) ? 1.0 : 0.0;
    }
    std::vector<std::pair<int, int>> missing;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (a(i, j) == 0.0) missing.emplace_back(i, j);
      }
    }
    if (missing.empty()) continue;
    const auto [i, j] = missing[gen() % missing.size()];
    const double before = fiedler_value(graph_from_adjacency(a));
    a(i, j) = a(j, i) = 1.0;
    const double after = fiedler_value(graph_from_adjacency(a));
    ASSERT_GE(after, before - 1e-9) << "trial " << trial;
  }
}

TEST(Laplacian, RowSumsSymmetryAndPsd) {
  const auto r = checks::laplacian_properties(2024, 100);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Components, LabelsInFirstSeenOrder) {
  auto maps = line_of(5, 20.0);
  maps[2].pos = {1000, 0};
  const auto g = build_graph(maps, 24.0);
  EXPECT_EQ(connected_components(g), (std::vector<int>{0, 0, 1, 2, 2}));
}

TEST(ClusterMst, TwoClusters) {
  const std::vector<std::pair<int, Vec2>> in{{0, {0, 0}}, {3, {30, 40}}};
  const auto mst = cluster_mst(in);
  ASSERT_EQ(mst.edges.size(), 1u);
  EXPECT_EQ(mst.edges[0], (ClusterEdge{0, 3, 50.0}));
}

TEST(ClusterMst, CollinearNeverSkipsMiddle) {
  const std::vector<std::pair<int, Vec2>> in{{0, {0, 0}}, {1, {100, 0}}, {2, {200, 0}}};
  const auto mst = cluster_mst(in);
  ASSERT_EQ(mst.edges.size(), 2u);
  EXPECT_EQ(mst.edges[0], (ClusterEdge{0, 1, 100.0}));
  EXPECT_EQ(mst.edges[1], (ClusterEdge{1, 2, 100.0}));
  EXPECT_EQ(mst.total_length(), 200.0);
}

TEST(ClusterMst, EmptyAndSingleton) {
  EXPECT_TRUE(cluster_mst(std::vector<std::pair<int, Vec2>>{}).empty());
  EXPECT_TRUE(cluster_mst(std::vector<std::pair<int, Vec2>>{{2, {5, 5}}}).empty());
}

TEST(ClusterMst, SquareTieBreakByIds) {
  // default layout: four equal sides, diagonals longer
  const std::vector<std::pair<int, Vec2>> in{{0, {0, 0}}, {1, {150, 0}}, {2, {0, 150}}, {3, {150, 150}}};
  const auto mst = cluster_mst(in);
  ASSERT_EQ(mst.edges.size(), 3u);
  EXPECT_EQ(mst.edges[0], (ClusterEdge{0, 1, 150.0}));
  EXPECT_EQ(mst.edges[1], (ClusterEdge{0, 2, 150.0}));
  EXPECT_EQ(mst.edges[2], (ClusterEdge{1, 3, 150.0}));
}

TEST(ClusterMst, MatchesBruteForce) {
  const auto r = checks::mst_matches_brute_force(606, 50, 7);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(ClusterMst, WeightInvariantUnderPermutation) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0, 500);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<int, Vec2>> in;
    for (int i = 0; i < 9; ++i) in.push_back({i, {u(gen), u(gen)}});
    const double w = cluster_mst(in).total_length();
    const auto edges = cluster_mst(in).edges;
    std::shuffle(in.begin(), in.end(), gen);
    EXPECT_EQ(cluster_mst(in).total_length(), w);
    EXPECT_EQ(cluster_mst(in).edges, edges);
  }
}
