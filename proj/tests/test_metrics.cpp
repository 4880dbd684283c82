#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "homest/error.hpp"
#include "homest/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace homest {
namespace {

TEST(EdgeVariation, Examples) {
  const auto g = Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 3.0}});
  const auto s = GraphSignal::from_labels({0, 0, 1}, 2);
  EXPECT_EQ(edge_variation(g, s, 0, 1), 0.0);
  EXPECT_EQ(edge_variation(g, s, 2, 1), 6.0);
  const auto unit = Graph::from_edges(2, {{0, 1, 1.0}});
  EXPECT_EQ(edge_variation(unit, GraphSignal::from_labels({0, 1}, 2), 0, 1), 2.0);
  EXPECT_THROW(edge_variation(g, s, 0, 2), Error);
}

TEST(DirichletEnergy, HandEnumeratedFixtures) {
  const auto k3 = testing::triangle_aab();
  EXPECT_EQ(dirichlet_energy(k3.graph, k3.signal), 4.0);
  const auto star = testing::star_a_abb();
  EXPECT_EQ(dirichlet_energy(star.graph, star.signal), 4.0);
  EXPECT_EQ(dirichlet_energy(k3.graph, GraphSignal::from_labels({1, 1, 1}, 2)), 0.0);
  EXPECT_THROW(dirichlet_energy(k3.graph, GraphSignal::from_labels({0, 1}, 2)), Error);
}

TEST(DirichletEnergy, MatchesDenseLaplacianTrace) {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> feature(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + gen() % 49;
    const auto g = testing::random_graph(gen, n, 0.2, true);
    std::vector<double> rows(n * 3);
    for (auto& x : rows) x = feature(gen);
    const auto s = GraphSignal::from_rows(n, 3, rows);
    const double oracle = oracle::dense_laplacian_energy(g, s);
    EXPECT_NEAR(dirichlet_energy(g, s), oracle, 1e-9 * std::max(1.0, std::abs(oracle)));
  }
}

TEST(DirichletEnergy, InvariantUnderJointRelabeling) {
  std::mt19937_64 gen(4);
  const auto g = testing::random_graph(gen, 20, 0.3, true);
  const auto s = testing::random_labels(gen, 20, 3);
  std::vector<NodeId> perm(20);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::shuffle(perm.begin(), perm.end(), gen);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.i], perm[e.j], e.w});
  std::vector<std::uint32_t> labels(20);
  for (NodeId v = 0; v < 20; ++v) labels[perm[v]] = s.labels()[v];
  const auto pg = Graph::from_edges(20, edges);
  const auto ps = GraphSignal::from_labels(labels, 3);
  EXPECT_DOUBLE_EQ(dirichlet_energy(pg, ps), dirichlet_energy(g, s));
  EXPECT_DOUBLE_EQ(node_homophily(pg, ps), node_homophily(g, s));
}

TEST(DirichletEnergy, LinearInUniformWeightScaling) {
  std::mt19937_64 gen(8);
  const auto g = testing::random_graph(gen, 25, 0.25, true);
  const auto s = testing::random_labels(gen, 25, 2);
  std::vector<Edge> scaled;
  for (const auto& e : g.edges()) scaled.push_back({e.i, e.j, 2.5 * e.w});
  const auto h = Graph::from_edges(25, scaled);
  EXPECT_NEAR(dirichlet_energy(h, s), 2.5 * dirichlet_energy(g, s), 1e-9);
  EXPECT_NEAR(normalized_dirichlet(h, s), normalized_dirichlet(g, s), 1e-12);
}

TEST(NormalizedDirichlet, Examples) {
  const auto k3 = testing::triangle_aab();
  EXPECT_NEAR(normalized_dirichlet(k3.graph, k3.signal), 4.0 / 6.0, 1e-15);
  EXPECT_THROW(normalized_dirichlet(Graph::from_edges(3, {}), k3.signal), Error);
}

TEST(EdgeHomophily, Examples) {
  const auto k3 = testing::triangle_aab();
  EXPECT_NEAR(edge_homophily(k3.graph, k3.signal), 1.0 / 3.0, 1e-15);
  const auto real = GraphSignal::from_rows(3, 1, {0.0, 1.0, 2.0});
  EXPECT_THROW(edge_homophily(k3.graph, real), Error);
}

TEST(NodeHomophily, Examples) {
  const auto k3 = testing::triangle_aab();
  EXPECT_NEAR(node_homophily(k3.graph, k3.signal), 1.0 / 3.0, 1e-15);
  const auto p3 = testing::path3_aab();
  EXPECT_NEAR(node_homophily(p3.graph, p3.signal), 0.5, 1e-15);
}

TEST(NodeHomophily, IsolatedNodesAreExcluded) {
  const auto g = Graph::from_edges(4, {{0, 1, 1.0}});
  const auto s = GraphSignal::from_labels({0, 0, 1, 1}, 2);
  EXPECT_EQ(node_homophily(g, s), 1.0);
  EXPECT_THROW(node_homophily(Graph::from_edges(4, {}), s), Error);
}

TEST(NodeHomophily, CountsNeighborsNotWeights) {
  const auto g = Graph::from_edges(3, {{0, 1, 9.0}, {0, 2, 1.0}});
  const auto s = GraphSignal::from_labels({0, 0, 1}, 2);
  EXPECT_NEAR(node_homophily(g, s), (0.5 + 1.0 + 0.0) / 3.0, 1e-15);
}

TEST(Metrics, NormalizedDirichletPlusEdgeHomophilyIsOne) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + gen() % 40;
    const auto g = testing::random_graph(gen, n, 0.3, trial % 2 == 0);
    if (g.edge_count() == 0) continue;
    const auto s = testing::random_labels(gen, n, 2 + trial % 4);
    EXPECT_NEAR(normalized_dirichlet(g, s) + edge_homophily(g, s), 1.0, 1e-12);
  }
}

TEST(Metrics, KarateMatchesPublishedGroundTruth) {
  const auto d = testing::karate();
  EXPECT_NEAR(normalized_dirichlet(d.graph, d.signal), 0.1082, 5e-5);
  EXPECT_NEAR(edge_homophily(d.graph, d.signal), 0.8918, 5e-5);
  EXPECT_NEAR(node_homophily(d.graph, d.signal), 0.8882, 5e-5);
  EXPECT_EQ(dirichlet_energy(d.graph, d.signal), 50.0);
}

TEST(Metrics, NameParsing) {
  EXPECT_EQ(parse_metric_kind("dirichlet"), MetricKind::dirichlet_normalized);
  EXPECT_EQ(parse_metric_kind("dirichlet_total"), MetricKind::dirichlet_total);
  EXPECT_FALSE(parse_metric_kind("modularity").has_value());
  for (auto k : {MetricKind::dirichlet_total, MetricKind::dirichlet_normalized, MetricKind::edge_homophily,
                 MetricKind::node_homophily}) {
    EXPECT_EQ(parse_metric_kind(to_string(k)), k);
  }
}

}  // namespace
}  // namespace homest
