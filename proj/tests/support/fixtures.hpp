#pragma once

#include <filesystem>
#include <random>
#include <vector>

#include "homest/graph.hpp"

namespace homest::testing {

inline std::filesystem::path data_dir() { return HOMEST_TEST_DATA_DIR; }

inline Dataset karate() { return load_dataset(load_manifest(data_dir() / "karate" / "karate.json")); }

// Labels use a = 0, b = 1.
inline Dataset triangle_aab() {
  return {"k3", Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}),
          GraphSignal::from_labels({0, 0, 1}, 2)};
}

// Center 0 labeled a; leaves 1 (a), 2 (b), 3 (b).
inline Dataset star_a_abb() {
  return {"star", Graph::from_edges(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}),
          GraphSignal::from_labels({0, 0, 1, 1}, 2)};
}

inline Dataset path3_aab() {
  return {"p3", Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}}), GraphSignal::from_labels({0, 0, 1}, 2)};
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>((v + 1) % n), 1.0});
  }
  return Graph::from_edges(n, std::move(edges));
}

inline Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(v + 1), 1.0});
  return Graph::from_edges(n, std::move(edges));
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return Graph::from_edges(n, std::move(edges));
}

/// Erdos-Renyi graph with optional integer weights in [1, 4].
inline Graph random_graph(std::mt19937_64& gen, std::size_t n, double density, bool weighted = false) {
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<int> weight(1, 4);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (coin(gen)) edges.push_back({i, j, weighted ? static_cast<double>(weight(gen)) : 1.0});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

inline GraphSignal random_labels(std::mt19937_64& gen, std::size_t n, std::size_t classes) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(classes - 1));
  std::vector<std::uint32_t> labels(n);
  for (auto& l : labels) l = pick(gen);
  return GraphSignal::from_labels(std::move(labels), classes);
}

/// Labeled planted-partition graph: `classes` equal groups, expected degree
/// `degree`, fraction `homophily` of edges inside groups.
inline Dataset planted_partition(std::uint64_t seed, std::size_t n, std::size_t classes, double degree,
                                 double homophily) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint32_t> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<std::uint32_t>(v % classes);
  const double group = static_cast<double>(n) / static_cast<double>(classes);
  const double p_in = degree * homophily / group;
  const double p_out = degree * (1.0 - homophily) / (static_cast<double>(n) - group);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (u(gen) < (labels[i] == labels[j] ? p_in : p_out)) edges.push_back({i, j, 1.0});
    }
  }
  return {"planted", Graph::from_edges(n, std::move(edges)), GraphSignal::from_labels(std::move(labels), classes)};
}

}  // namespace homest::testing
