#include "homest/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "homest/error.hpp"
#include "homest/format.hpp"

namespace homest {

SampleDesign SampleDesign::srs_fraction(double fraction, std::size_t n, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0) throw DesignError("SRS fraction must lie in (0, 1]");
  const auto n_star = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  return srs(std::max<std::size_t>(1, n_star), seed);
}

std::string SampleDesign::kind_name() const {
  struct {
    std::string operator()(const BernoulliDesign&) const { return "bernoulli"; }
    std::string operator()(const SrsDesign&) const { return "srs"; }
    std::string operator()(const TracerouteDesign&) const { return "traceroute"; }
  } visitor;
  return std::visit(visitor, variant);
}

std::string SampleDesign::parameters() const {
  struct {
    std::string operator()(const BernoulliDesign& d) const { return "p=" + format_double(d.p); }
    std::string operator()(const SrsDesign& d) const { return "n_star=" + std::to_string(d.n_star); }
    std::string operator()(const TracerouteDesign& d) const {
      return "n_S=" + std::to_string(d.n_sources) + ",n_T=" + std::to_string(d.n_targets);
    }
  } visitor;
  return std::visit(visitor, variant);
}

void SampleDesign::validate(std::size_t n) const {
  if (const auto* b = std::get_if<BernoulliDesign>(&variant)) {
    if (!(b->p > 0.0) || b->p > 1.0) throw DesignError("Bernoulli p must lie in (0, 1]");
  } else if (const auto* s = std::get_if<SrsDesign>(&variant)) {
    if (s->n_star < 1 || s->n_star > n) {
      throw DesignError("SRS n_star=" + std::to_string(s->n_star) + " outside [1, " +
                        std::to_string(n) + "]");
    }
  } else {
    const auto& t = std::get<TracerouteDesign>(variant);
    if (t.n_sources < 1 || t.n_sources > n || t.n_targets < 1 || t.n_targets > n) {
      throw DesignError("traceroute source/target counts must lie in [1, " + std::to_string(n) + "]");
    }
  }
}

std::vector<EdgeId> SampledGraph::edge_ids() const {
  std::vector<EdgeId> ids;
  ids.reserve(edges.size());
  for (const auto& e : edges) ids.push_back(e.parent);
  return ids;
}

std::vector<NodeId> bernoulli_node_sample(const Graph& g, double p, CounterRng& rng) {
  if (!(p > 0.0) || p > 1.0) throw DesignError("Bernoulli p must lie in (0, 1]");
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (rng.bernoulli(p)) nodes.push_back(v);
  }
  return nodes;
}

std::vector<NodeId> srs_node_sample(const Graph& g, std::size_t n_star, CounterRng& rng) {
  const std::size_t n = g.node_count();
  if (n_star < 1 || n_star > n) {
    throw DesignError("SRS n_star=" + std::to_string(n_star) + " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  for (std::size_t k = 0; k < n_star; ++k) {
    const auto pick = k + rng.below(n - k);
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(n_star);
  std::sort(pool.begin(), pool.end());
  return pool;
}

SampledGraph induced_subgraph(const Graph& g, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<char> member(g.node_count(), 0);
  for (NodeId v : nodes) {
    if (v >= g.node_count()) throw Error("node " + std::to_string(v) + " out of range");
    member[v] = 1;
  }
  SampledGraph out;
  out.parent_node_count = g.node_count();
  // Scan incident edges of sampled nodes from their lower endpoint only.
  for (NodeId v : nodes) {
    for (const auto& nb : g.neighbors(v)) {
      if (nb.node > v && member[nb.node]) {
        const auto& e = g.edge(nb.edge);
        out.edges.push_back({nb.edge, e.i, e.j, e.w, 0.0});
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const SampledEdge& a, const SampledEdge& b) { return a.parent < b.parent; });
  out.nodes = std::move(nodes);
  return out;
}

ShortestPathTree bfs_tree(const Graph& g, NodeId source) {
  const std::size_t n = g.node_count();
  if (source >= n) throw Error("source " + std::to_string(source) + " out of range");
  ShortestPathTree tree;
  tree.source = source;
  tree.distance.assign(n, ShortestPathTree::kUnreachable);
  tree.path_count.assign(n, 0.0);
  tree.order.reserve(n);
  tree.distance[source] = 0;
  tree.path_count[source] = 1.0;
  tree.order.push_back(source);
  for (std::size_t head = 0; head < tree.order.size(); ++head) {
    const NodeId v = tree.order[head];
    for (const auto& nb : g.neighbors(v)) {
      if (tree.distance[nb.node] == ShortestPathTree::kUnreachable) {
        tree.distance[nb.node] = tree.distance[v] + 1;
        tree.order.push_back(nb.node);
      }
      if (tree.distance[nb.node] == tree.distance[v] + 1) tree.path_count[nb.node] += tree.path_count[v];
    }
  }
  return tree;
}

std::optional<std::vector<NodeId>> trace_shortest_path(const Graph& g, const ShortestPathTree& tree,
                                                       NodeId target, CounterRng& rng,
                                                       std::vector<EdgeId>* edges_out) {
  if (!tree.reaches(target)) return std::nullopt;
  std::vector<NodeId> path(tree.distance[target] + 1);
  NodeId v = target;
  path.back() = v;
  for (std::size_t step = path.size() - 1; step > 0; --step) {
    const auto want = tree.distance[v] - 1;
    double r = rng.uniform01() * tree.path_count[v];
    const Neighbor* chosen = nullptr;
    for (const auto& nb : g.neighbors(v)) {
      if (tree.distance[nb.node] != want) continue;
      chosen = &nb;
      r -= tree.path_count[nb.node];
      if (r < 0) break;
    }
    // `chosen` falls through to the last predecessor when rounding leaves r >= 0.
    if (edges_out) edges_out->push_back(chosen->edge);
    v = chosen->node;
    path[step - 1] = v;
  }
  return path;
}

std::optional<std::vector<NodeId>> random_shortest_path(const Graph& g, NodeId s, NodeId t,
                                                        CounterRng& rng) {
  if (s == t) throw Error("random_shortest_path requires distinct endpoints");
  if (t >= g.node_count()) throw Error("target " + std::to_string(t) + " out of range");
  return trace_shortest_path(g, bfs_tree(g, s), t, rng);
}

SampledGraph traceroute_sample(const Graph& g, std::size_t n_sources, std::size_t n_targets,
                               CounterRng& rng, bool record_paths) {
  const auto sources = srs_node_sample(g, n_sources, rng);
  const auto targets = srs_node_sample(g, n_targets, rng);
  SampledGraph out;
  out.parent_node_count = g.node_count();
  std::vector<char> seen(g.edge_count(), 0);
  std::vector<EdgeId> traversed;
  for (NodeId s : sources) {
    const auto tree = bfs_tree(g, s);
    for (NodeId t : targets) {
      if (s == t) continue;
      traversed.clear();
      auto path = trace_shortest_path(g, tree, t, rng, &traversed);
      if (!path) {
        ++out.unreachable_pairs;
        continue;
      }
      for (EdgeId e : traversed) seen[e] = 1;
      if (record_paths) out.paths.push_back(std::move(*path));
    }
  }
  std::vector<char> node_seen(g.node_count(), 0);
  for (EdgeId id = 0; id < seen.size(); ++id) {
    if (!seen[id]) continue;
    const auto& e = g.edge(id);
    out.edges.push_back({id, e.i, e.j, e.w, 0.0});
    node_seen[e.i] = node_seen[e.j] = 1;
  }
  for (NodeId v = 0; v < node_seen.size(); ++v) {
    if (node_seen[v]) out.nodes.push_back(v);
  }
  return out;
}

SampledGraph draw_sample(const Graph& g, const SampleDesign& design, bool record_paths) {
  design.validate(g.node_count());
  CounterRng rng(design.seed);
  SampledGraph out;
  if (const auto* b = std::get_if<BernoulliDesign>(&design.variant)) {
    out = induced_subgraph(g, bernoulli_node_sample(g, b->p, rng));
  } else if (const auto* s = std::get_if<SrsDesign>(&design.variant)) {
    out = induced_subgraph(g, srs_node_sample(g, s->n_star, rng));
  } else {
    const auto& t = std::get<TracerouteDesign>(design.variant);
    out = traceroute_sample(g, t.n_sources, t.n_targets, rng, record_paths);
  }
  out.design = design;
  return out;
}

}  // namespace homest
