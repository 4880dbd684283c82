#include "homest/metrics.hpp"

#include <vector>

#include "homest/error.hpp"

namespace homest {

namespace {

void check_dimensions(const Graph& g, const GraphSignal& s) {
  if (s.node_count() != g.node_count()) {
    throw Error("signal has " + std::to_string(s.node_count()) + " rows but graph has " +
                std::to_string(g.node_count()) + " nodes");
  }
}

void require_edges(const Graph& g) {
  if (g.edge_count() == 0 || total_edge_weight(g) <= 0) throw Error("graph has no edges");
}

}  // namespace

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::dirichlet_total: return "dirichlet_total";
    case MetricKind::dirichlet_normalized: return "dirichlet_normalized";
    case MetricKind::edge_homophily: return "edge_homophily";
    case MetricKind::node_homophily: return "node_homophily";
  }
  return "unknown";
}

std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  if (name == "dirichlet_total") return MetricKind::dirichlet_total;
  if (name == "dirichlet_normalized" || name == "dirichlet") return MetricKind::dirichlet_normalized;
  if (name == "edge_homophily" || name == "edge") return MetricKind::edge_homophily;
  if (name == "node_homophily" || name == "node") return MetricKind::node_homophily;
  return std::nullopt;
}

double edge_variation(const Graph& g, const GraphSignal& s, EdgeId e) {
  check_dimensions(g, s);
  const auto& edge = g.edge(e);
  return edge.w * s.squared_distance(edge.i, edge.j);
}

double edge_variation(const Graph& g, const GraphSignal& s, NodeId i, NodeId j) {
  auto e = g.find_edge(i, j);
  if (!e) throw Error("(" + std::to_string(i) + "," + std::to_string(j) + ") is not an edge");
  return edge_variation(g, s, *e);
}

double dirichlet_energy(const Graph& g, const GraphSignal& s) {
  check_dimensions(g, s);
  double total = 0.0;
  for (const auto& e : g.edges()) total += e.w * s.squared_distance(e.i, e.j);
  return total;
}

double normalized_dirichlet(const Graph& g, const GraphSignal& s) {
  require_edges(g);
  return dirichlet_energy(g, s) / (2.0 * total_edge_weight(g));
}

double edge_homophily(const Graph& g, const GraphSignal& s) {
  check_dimensions(g, s);
  require_edges(g);
  const auto labels = s.labels();
  double same = 0.0;
  for (const auto& e : g.edges()) {
    if (labels[e.i] == labels[e.j]) same += e.w;
  }
  return same / total_edge_weight(g);
}

double node_homophily(const Graph& g, const GraphSignal& s) {
  check_dimensions(g, s);
  require_edges(g);
  return *node_homophily_of(g.edges(), s.labels());
}

std::optional<double> node_homophily_of(std::span<const Edge> edges,
                                        std::span<const std::uint32_t> labels) {
  std::vector<std::uint32_t> degree(labels.size(), 0);
  std::vector<std::uint32_t> same(labels.size(), 0);
  for (const auto& e : edges) {
    const bool match = labels[e.i] == labels[e.j];
    ++degree[e.i];
    ++degree[e.j];
    same[e.i] += match;
    same[e.j] += match;
  }
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t v = 0; v < degree.size(); ++v) {
    if (degree[v] == 0) continue;
    sum += static_cast<double>(same[v]) / degree[v];
    ++counted;
  }
  if (counted == 0) return std::nullopt;
  return sum / static_cast<double>(counted);
}

double exact_metric(const Graph& g, const GraphSignal& s, MetricKind kind) {
  switch (kind) {
    case MetricKind::dirichlet_total: return dirichlet_energy(g, s);
    case MetricKind::dirichlet_normalized: return normalized_dirichlet(g, s);
    case MetricKind::edge_homophily: return edge_homophily(g, s);
    case MetricKind::node_homophily: return node_homophily(g, s);
  }
  throw Error("unknown metric kind");
}

double edge_quantity(const Graph& g, const GraphSignal& s, EdgeId id, EdgeQuantity q) {
  const auto& e = g.edge(id);
  switch (q) {
    case EdgeQuantity::variation: return e.w * s.squared_distance(e.i, e.j);
    case EdgeQuantity::same_label_weight: {
      const auto labels = s.labels();
      return labels[e.i] == labels[e.j] ? e.w : 0.0;
    }
    case EdgeQuantity::weight: return e.w;
    case EdgeQuantity::twice_weight: return 2.0 * e.w;
  }
  throw Error("unknown edge quantity");
}

}  // namespace homest
