#include <algorithm>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "homest/error.hpp"
#include "homest/graph.hpp"
#include "support/fixtures.hpp"

namespace homest {
namespace {

Graph parse(const std::string& text, std::optional<std::size_t> hint = std::nullopt) {
  std::istringstream in(text);
  return load_edge_list(in, hint);
}

TEST(EdgeList, UnweightedLinesDefaultToUnitWeight) {
  const auto g = parse("0 1\n1 2\n");
  EXPECT_EQ(g.node_count(), 3u);
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1.0}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2, 1.0}));
}

TEST(EdgeList, DuplicatePairsMergeBySummingWeights) {
  const auto g = parse("0 1 2.0\n1 0 1.0\n");
  EXPECT_EQ(g.node_count(), 2u);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 3.0}));
}

TEST(EdgeList, CommentsBlankLinesAndHint) {
  const auto g = parse("# header\n\n 2 0   # trailing\n", 6);
  EXPECT_EQ(g.node_count(), 6u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 2, 1.0}));
  EXPECT_EQ(g.degree(5), 0u);
}

TEST(EdgeList, ErrorsReportLineNumbers) {
  try {
    parse("0 1\n1 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("0 1\n3 3\n"), ParseError);
  EXPECT_THROW(parse("0 1 -2\n"), ParseError);
  EXPECT_THROW(parse("0 1 2 3\n"), ParseError);
  EXPECT_THROW(parse("-1 2\n"), ParseError);
}

TEST(EdgeList, RemappingInternsSparseIds) {
  std::istringstream in("1000 -5\n-5 77\n");
  NodeIdMap ids;
  const auto g = load_edge_list_remapped(in, ids);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(ids.external(0), 1000);
  EXPECT_EQ(*ids.find(77), 2u);
  EXPECT_TRUE(g.find_edge(1, 2).has_value());

  std::istringstream labels("77 1\n1000 0\n-5 1\n");
  const auto s = load_labels(labels, 2, g.node_count(), &ids);
  EXPECT_EQ(s.labels()[0], 0u);
  EXPECT_EQ(s.labels()[2], 1u);
}

TEST(Graph, AdjacencyIsSortedAndConsistent) {
  std::mt19937_64 gen(3);
  const auto g = testing::random_graph(gen, 30, 0.2, true);
  std::size_t degree_sum = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nbrs = g.neighbors(v);
    degree_sum += nbrs.size();
    EXPECT_TRUE(std::is_sorted(nbrs.begin(), nbrs.end(),
                               [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; }));
    for (const auto& nb : nbrs) {
      const auto& e = g.edge(nb.edge);
      EXPECT_TRUE((e.i == v && e.j == nb.node) || (e.j == v && e.i == nb.node));
      EXPECT_EQ(g.find_edge(v, nb.node), nb.edge);
    }
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
  EXPECT_FALSE(g.find_edge(0, 0).has_value());
}

TEST(Graph, FromEdgesRejectsInvalidInput) {
  EXPECT_THROW(Graph::from_edges(2, {{0, 0, 1.0}}), Error);
  EXPECT_THROW(Graph::from_edges(2, {{0, 2, 1.0}}), Error);
  EXPECT_THROW(Graph::from_edges(2, {{0, 1, 0.0}}), Error);
}

TEST(Graph, SaveAndReloadIsIdentity) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Edge> edges;
    std::uniform_real_distribution<double> w(0.01, 10.0);
    const auto base = testing::random_graph(gen, 15, 0.3);
    for (const auto& e : base.edges()) edges.push_back({e.i, e.j, w(gen)});
    const auto g = Graph::from_edges(15, edges);
    std::stringstream text;
    save_edge_list(text, g);
    EXPECT_EQ(load_edge_list(text, g.node_count()), g);
  }
}

TEST(TotalEdgeWeight, Examples) {
  EXPECT_EQ(total_edge_weight(Graph{}), 0.0);
  EXPECT_EQ(total_edge_weight(Graph::from_edges(2, {{0, 1, 3.0}})), 3.0);
}

TEST(TotalEdgeWeight, InvariantUnderPermutationOfLines) {
  std::mt19937_64 gen(5);
  const auto g = testing::random_graph(gen, 20, 0.3, true);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(edges.begin(), edges.end(), gen);
    for (auto& e : edges) {
      if (gen() & 1) std::swap(e.i, e.j);
    }
    EXPECT_EQ(total_edge_weight(Graph::from_edges(20, edges)), total_edge_weight(g));
  }
}

TEST(Labels, OneHotRowsAndLabelView) {
  std::istringstream in("0 0\n1 0\n2 1");
  const auto s = load_labels(in, 2, 3);
  ASSERT_EQ(s.dimension(), 2u);
  const std::vector<std::vector<double>> want{{1, 0}, {1, 0}, {0, 1}};
  for (NodeId v = 0; v < 3; ++v) {
    EXPECT_EQ(std::vector<double>(s.row(v).begin(), s.row(v).end()), want[v]);
  }
  EXPECT_EQ(std::vector<std::uint32_t>(s.labels().begin(), s.labels().end()),
            (std::vector<std::uint32_t>{0, 0, 1}));
}

TEST(Labels, Errors) {
  std::istringstream missing("0 0");
  EXPECT_THROW(load_labels(missing, 2, 2), ParseError);
  std::istringstream range("0 0\n1 2\n");
  EXPECT_THROW(load_labels(range, 2, 2), ParseError);
  std::istringstream dup("0 0\n0 1\n1 1\n");
  EXPECT_THROW(load_labels(dup, 2, 2), ParseError);
}

TEST(Labels, RoundTripThroughLabelView) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = testing::random_labels(gen, 25, 4);
    std::stringstream text;
    for (NodeId v = 0; v < 25; ++v) text << v << ' ' << s.labels()[v] << '\n';
    const auto back = load_labels(text, 4, 25);
    EXPECT_TRUE(std::equal(back.labels().begin(), back.labels().end(), s.labels().begin()));
  }
}

TEST(Signal, RealRowsHaveNoLabelView) {
  const auto s = GraphSignal::from_rows(2, 2, {0.5, 1.0, 1.5, -1.0});
  EXPECT_FALSE(s.has_labels());
  EXPECT_THROW(s.labels(), Error);
  EXPECT_DOUBLE_EQ(s.squared_distance(0, 1), 1.0 + 4.0);
  EXPECT_THROW(GraphSignal::from_rows(2, 2, {1.0}), Error);
}

TEST(Dataset, KarateFixture) {
  const auto d = testing::karate();
  EXPECT_EQ(d.name, "karate");
  EXPECT_EQ(d.graph.node_count(), 34u);
  EXPECT_EQ(d.graph.edge_count(), 78u);
  // Zachary's interaction counts; the unweighted tie count is 78.
  EXPECT_EQ(total_edge_weight(d.graph), 231.0);
  ASSERT_EQ(d.signal.node_count(), 34u);
  EXPECT_EQ(std::count(d.signal.labels().begin(), d.signal.labels().end(), 0u), 17);
  // The two faction leaders.
  EXPECT_EQ(d.signal.labels()[0], 0u);
  EXPECT_EQ(d.signal.labels()[33], 1u);
}

TEST(Dataset, ManifestErrors) {
  EXPECT_THROW(load_manifest(testing::data_dir() / "does-not-exist.json"), Error);
}

}  // namespace
}  // namespace homest
