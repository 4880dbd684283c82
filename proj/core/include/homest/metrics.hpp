#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homest/graph.hpp"

namespace homest {

enum class MetricKind { dirichlet_total, dirichlet_normalized, edge_homophily, node_homophily };

std::string_view to_string(MetricKind kind);
/// Accepts the canonical names plus the alias "dirichlet" (= dirichlet_normalized).
std::optional<MetricKind> parse_metric_kind(std::string_view name);

struct HomophilyValue {
  MetricKind kind;
  double value;
};

/// V_ij = A_ij * ||x_i - x_j||^2 for an edge of g. Throws if (i, j) is not an edge.
double edge_variation(const Graph& g, const GraphSignal& s, NodeId i, NodeId j);
double edge_variation(const Graph& g, const GraphSignal& s, EdgeId e);

/// Sum of V_ij over edges, each unordered edge once; equals trace(X^T L X).
double dirichlet_energy(const Graph& g, const GraphSignal& s);

/// dirichlet_energy / (2 * total_edge_weight). For one-hot features the
/// squared distance across classes is 2, so the result is the heterophilous
/// share of edge weight and lies in [0, 1].
double normalized_dirichlet(const Graph& g, const GraphSignal& s);

/// Share of edge weight joining same-label endpoints.
double edge_homophily(const Graph& g, const GraphSignal& s);

/// Mean over nodes with at least one neighbor of the fraction of neighbors
/// sharing the node's label. Neighbors are counted, weights are ignored.
double node_homophily(const Graph& g, const GraphSignal& s);

/// Node homophily of the graph formed by `edges` on nodes [0, labels.size()).
/// Nodes with no incident edge are excluded; nullopt when none remain.
std::optional<double> node_homophily_of(std::span<const Edge> edges,
                                        std::span<const std::uint32_t> labels);

double exact_metric(const Graph& g, const GraphSignal& s, MetricKind kind);

/// Per-edge quantities that the homophily metrics total over edges.
enum class EdgeQuantity {
  variation,        // A_ij ||x_i - x_j||^2
  same_label_weight,  // A_ij 1{label_i == label_j}
  weight,           // A_ij
  twice_weight,     // 2 A_ij, the normalizer of the Dirichlet energy
};

double edge_quantity(const Graph& g, const GraphSignal& s, EdgeId e, EdgeQuantity q);

}  // namespace homest
