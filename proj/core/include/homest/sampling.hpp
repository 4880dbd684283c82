#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "homest/graph.hpp"
#include "homest/rng.hpp"

namespace homest {

/// Bernoulli node sampling followed by induced-subgraph edge observation.
struct BernoulliDesign {
  double p = 1.0;
};

/// Simple random sampling of n_star nodes without replacement, induced edges.
struct SrsDesign {
  std::size_t n_star = 0;
};

/// Random shortest paths between n_sources sources and n_targets targets.
/// Sources and targets are two independent SRS draws; they may overlap and
/// s == t pairs are skipped.
struct TracerouteDesign {
  std::size_t n_sources = 1;
  std::size_t n_targets = 1;
};

struct SampleDesign {
  std::variant<BernoulliDesign, SrsDesign, TracerouteDesign> variant;
  std::uint64_t seed = 0;

  static SampleDesign bernoulli(double p, std::uint64_t seed = 0) { return {BernoulliDesign{p}, seed}; }
  static SampleDesign srs(std::size_t n_star, std::uint64_t seed = 0) { return {SrsDesign{n_star}, seed}; }
  /// n_star = round(fraction * n), at least 1.
  static SampleDesign srs_fraction(double fraction, std::size_t n, std::uint64_t seed = 0);
  static SampleDesign traceroute(std::size_t sources, std::size_t targets, std::uint64_t seed = 0) {
    return {TracerouteDesign{sources, targets}, seed};
  }

  std::string kind_name() const;
  /// Human-readable parameter string, e.g. "p=0.3" or "n_S=5,n_T=5".
  std::string parameters() const;
  bool is_induced() const { return !std::holds_alternative<TracerouteDesign>(variant); }
  SampleDesign with_seed(std::uint64_t s) const { return {variant, s}; }

  /// Throws DesignError unless 0 < p <= 1, 1 <= n_star <= n, 1 <= n_S, n_T <= n.
  void validate(std::size_t node_count) const;
};

struct SampledEdge {
  EdgeId parent = 0;
  NodeId i = 0;
  NodeId j = 0;
  double w = 0.0;
  /// Inclusion probability; 0 until attached by an inclusion model.
  double pi = 0.0;
};

/// Observed subgraph of a parent graph. Edges keep their parent edge id and
/// are sorted by it; nodes are sorted.
struct SampledGraph {
  std::optional<SampleDesign> design;
  std::size_t parent_node_count = 0;
  std::vector<NodeId> nodes;
  std::vector<SampledEdge> edges;
  /// Traceroute only: one node path per traced (source, target) pair.
  std::vector<std::vector<NodeId>> paths;
  std::size_t unreachable_pairs = 0;

  std::vector<EdgeId> edge_ids() const;
};

std::vector<NodeId> bernoulli_node_sample(const Graph& g, double p, CounterRng& rng);

/// Uniform size-n_star subset via a partial Fisher-Yates shuffle; sorted.
std::vector<NodeId> srs_node_sample(const Graph& g, std::size_t n_star, CounterRng& rng);

/// All parent edges with both endpoints in `nodes`. The design is left unset.
SampledGraph induced_subgraph(const Graph& g, std::vector<NodeId> nodes);

/// Hop distances and shortest-path counts from one source.
struct ShortestPathTree {
  NodeId source = 0;
  std::vector<std::uint32_t> distance;  // kUnreachable where not reached
  std::vector<double> path_count;       // sigma_{s v}
  /// Nodes in nondecreasing distance order.
  std::vector<NodeId> order;

  static constexpr std::uint32_t kUnreachable = 0xffffffffu;
  bool reaches(NodeId v) const { return distance[v] != kUnreachable; }
};

ShortestPathTree bfs_tree(const Graph& g, NodeId source);

/// Backtracks from `target` choosing each predecessor u of v with probability
/// sigma_u / sigma_v, which draws uniformly among all shortest paths.
/// Returns the node path source..target and appends traversed edge ids to
/// `edges_out` when given. nullopt if target is unreachable.
std::optional<std::vector<NodeId>> trace_shortest_path(const Graph& g, const ShortestPathTree& tree,
                                                       NodeId target, CounterRng& rng,
                                                       std::vector<EdgeId>* edges_out = nullptr);

/// Uniformly random shortest s-t path; requires s != t.
std::optional<std::vector<NodeId>> random_shortest_path(const Graph& g, NodeId s, NodeId t,
                                                        CounterRng& rng);

SampledGraph traceroute_sample(const Graph& g, std::size_t n_sources, std::size_t n_targets,
                               CounterRng& rng, bool record_paths = true);

/// Realizes `design` on `g` with a generator seeded from design.seed.
SampledGraph draw_sample(const Graph& g, const SampleDesign& design, bool record_paths = true);

}  // namespace homest
