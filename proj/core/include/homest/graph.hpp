#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace homest {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected weighted edge stored canonically with i < j.
struct Edge {
  NodeId i = 0;
  NodeId j = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  EdgeId edge;
};

/// Immutable undirected weighted graph on nodes [0, n).
///
/// Edges are kept sorted by (i, j). A CSR adjacency index gives O(deg)
/// neighbor traversal; each neighbor list is sorted by node id.
class Graph {
 public:
  Graph() = default;

  /// Canonicalizes `edges`: orients every pair as i < j, merges duplicates by
  /// summing weights. Throws on self-loops, out-of-range ids and weights that
  /// are not strictly positive and finite.
  static Graph from_edges(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  std::span<const Neighbor> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Sum of edge weights, each unordered edge counted once.
double total_edge_weight(const Graph& g) noexcept;

/// Per-node feature rows (n x f, row-major), optionally backed by class labels
/// when every row is one-hot.
class GraphSignal {
 public:
  GraphSignal() = default;

  static GraphSignal from_rows(std::size_t node_count, std::size_t dimension,
                               std::vector<double> values);
  static GraphSignal from_labels(std::vector<std::uint32_t> labels, std::size_t class_count);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const double> row(NodeId v) const {
    return {values_.data() + static_cast<std::size_t>(v) * dimension_, dimension_};
  }
  double squared_distance(NodeId a, NodeId b) const;

  bool has_labels() const noexcept { return labels_.has_value(); }
  /// Class ids; throws homest::Error when the signal carries no label view.
  std::span<const std::uint32_t> labels() const;

 private:
  std::size_t node_count_ = 0;
  std::size_t dimension_ = 0;
  std::vector<double> values_;
  std::optional<std::vector<std::uint32_t>> labels_;
};

/// Dense remapping of arbitrary external integer ids.
class NodeIdMap {
 public:
  NodeId intern(std::int64_t external);
  std::optional<NodeId> find(std::int64_t external) const;
  std::int64_t external(NodeId id) const { return externals_.at(id); }
  std::size_t size() const noexcept { return externals_.size(); }

 private:
  std::unordered_map<std::int64_t, NodeId> ids_;
  std::vector<std::int64_t> externals_;
};

/// Reads a whitespace-separated edge list ("i j" or "i j w", '#' comments).
/// node_count is max id + 1, or `n_hint` if that is larger.
Graph load_edge_list(std::istream& in, std::optional<std::size_t> n_hint = std::nullopt);

/// Same format, but external ids may be sparse or negative; they are interned
/// into [0, n) in order of first appearance and the mapping is written to `ids`.
Graph load_edge_list_remapped(std::istream& in, NodeIdMap& ids);

/// Writes "i j w" lines that reload to an identical graph.
void save_edge_list(std::ostream& out, const Graph& g);

/// Reads "node_id class_id" lines; every node in [0, n) must appear once.
/// With `ids`, node ids are external ids resolved through the map.
GraphSignal load_labels(std::istream& in, std::size_t class_count, std::size_t node_count,
                        const NodeIdMap* ids = nullptr);

struct DatasetManifest {
  std::string name;
  std::filesystem::path edge_file;
  std::filesystem::path label_file;
  std::size_t class_count = 0;
  bool remap_ids = false;
};

/// Parses a manifest JSON object. Relative file paths resolve against the
/// manifest's directory.
DatasetManifest load_manifest(const std::filesystem::path& path);

struct Dataset {
  std::string name;
  Graph graph;
  GraphSignal signal;
};

Dataset load_dataset(const DatasetManifest& manifest);

}  // namespace homest
