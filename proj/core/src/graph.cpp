#include "homest/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include "homest/error.hpp"
#include "homest/format.hpp"
#include "json.hpp"

namespace homest {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line_no, std::string("malformed ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

struct RawEdge {
  std::int64_t a;
  std::int64_t b;
  double w;
};

template <typename Visitor>
void read_edge_lines(std::istream& in, Visitor&& visit) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(line_no, "expected 'i j' or 'i j w', got " +
                                    std::to_string(fields.size()) + " fields");
    }
    RawEdge e{parse_number<std::int64_t>(fields[0], line_no, "node id"),
              parse_number<std::int64_t>(fields[1], line_no, "node id"), 1.0};
    if (fields.size() == 3) e.w = parse_number<double>(fields[2], line_no, "weight");
    if (e.a == e.b) throw ParseError(line_no, "self-loop on node " + std::to_string(e.a));
    if (!std::isfinite(e.w)) throw ParseError(line_no, "non-finite weight");
    if (e.w < 0) throw ParseError(line_no, "negative weight");
    if (e.w == 0) throw ParseError(line_no, "zero weight (omit non-edges)");
    visit(e, line_no);
  }
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::vector<Edge> edges) {
  if (node_count > std::numeric_limits<NodeId>::max()) throw Error("graph too large");
  for (auto& e : edges) {
    if (e.i == e.j) throw Error("self-loop on node " + std::to_string(e.i));
    if (e.i >= node_count || e.j >= node_count) {
      throw Error("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                  ") out of range for " + std::to_string(node_count) + " nodes");
    }
    if (!(e.w > 0) || !std::isfinite(e.w)) throw Error("edge weight must be positive and finite");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  std::vector<Edge> merged;
  merged.reserve(edges.size());
  for (const auto& e : edges) {
    if (!merged.empty() && merged.back().i == e.i && merged.back().j == e.j) {
      merged.back().w += e.w;
    } else {
      merged.push_back(e);
    }
  }

  Graph g;
  g.node_count_ = node_count;
  g.edges_ = std::move(merged);
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.i + 1];
    ++g.offsets_[e.j + 1];
  }
  for (std::size_t v = 0; v < node_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const auto& e = g.edges_[id];
    g.adjacency_[cursor[e.i]++] = {e.j, id};
    g.adjacency_[cursor[e.j]++] = {e.i, id};
  }
  // Edges are sorted by (i, j), so lists come out sorted except for the
  // interleaving of lower and higher neighbors.
  for (std::size_t v = 0; v < node_count; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

std::optional<EdgeId> Graph::find_edge(NodeId a, NodeId b) const {
  if (a >= node_count_ || b >= node_count_) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nbrs = neighbors(a);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b,
                             [](const Neighbor& n, NodeId key) { return n.node < key; });
  if (it == nbrs.end() || it->node != b) return std::nullopt;
  return it->edge;
}

double total_edge_weight(const Graph& g) noexcept {
  double total = 0.0;
  for (const auto& e : g.edges()) total += e.w;
  return total;
}

GraphSignal GraphSignal::from_rows(std::size_t node_count, std::size_t dimension,
                                   std::vector<double> values) {
  if (values.size() != node_count * dimension) {
    throw Error("signal has " + std::to_string(values.size()) + " values, expected " +
                std::to_string(node_count) + " x " + std::to_string(dimension));
  }
  GraphSignal s;
  s.node_count_ = node_count;
  s.dimension_ = dimension;
  s.values_ = std::move(values);
  return s;
}

GraphSignal GraphSignal::from_labels(std::vector<std::uint32_t> labels, std::size_t class_count) {
  std::vector<double> values(labels.size() * class_count, 0.0);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] >= class_count) {
      throw Error("class id " + std::to_string(labels[v]) + " of node " + std::to_string(v) +
                  " out of range [0, " + std::to_string(class_count) + ")");
    }
    values[v * class_count + labels[v]] = 1.0;
  }
  GraphSignal s = from_rows(labels.size(), class_count, std::move(values));
  s.labels_ = std::move(labels);
  return s;
}

double GraphSignal::squared_distance(NodeId a, NodeId b) const {
  if (labels_) return (*labels_)[a] == (*labels_)[b] ? 0.0 : 2.0;
  auto ra = row(a);
  auto rb = row(b);
  double sum = 0.0;
  for (std::size_t k = 0; k < dimension_; ++k) {
    const double d = ra[k] - rb[k];
    sum += d * d;
  }
  return sum;
}

std::span<const std::uint32_t> GraphSignal::labels() const {
  if (!labels_) throw Error("signal has no class labels");
  return *labels_;
}

NodeId NodeIdMap::intern(std::int64_t external) {
  auto [it, inserted] = ids_.try_emplace(external, static_cast<NodeId>(externals_.size()));
  if (inserted) externals_.push_back(external);
  return it->second;
}

std::optional<NodeId> NodeIdMap::find(std::int64_t external) const {
  if (auto it = ids_.find(external); it != ids_.end()) return it->second;
  return std::nullopt;
}

Graph load_edge_list(std::istream& in, std::optional<std::size_t> n_hint) {
  std::vector<Edge> edges;
  std::size_t node_count = 0;
  read_edge_lines(in, [&](const RawEdge& e, std::size_t line_no) {
    if (e.a < 0 || e.b < 0 || e.a > std::numeric_limits<NodeId>::max() - 1 ||
        e.b > std::numeric_limits<NodeId>::max() - 1) {
      throw ParseError(line_no, "node id out of range (use id remapping for sparse ids)");
    }
    edges.push_back({static_cast<NodeId>(e.a), static_cast<NodeId>(e.b), e.w});
    node_count = std::max<std::size_t>(node_count, static_cast<std::size_t>(std::max(e.a, e.b)) + 1);
  });
  if (n_hint && *n_hint > node_count) node_count = *n_hint;
  return Graph::from_edges(node_count, std::move(edges));
}

Graph load_edge_list_remapped(std::istream& in, NodeIdMap& ids) {
  std::vector<Edge> edges;
  read_edge_lines(in, [&](const RawEdge& e, std::size_t) {
    const NodeId a = ids.intern(e.a);
    const NodeId b = ids.intern(e.b);
    edges.push_back({a, b, e.w});
  });
  return Graph::from_edges(ids.size(), std::move(edges));
}

void save_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << '\n';
  for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << format_double(e.w) << '\n';
}

GraphSignal load_labels(std::istream& in, std::size_t class_count, std::size_t node_count,
                        const NodeIdMap* ids) {
  if (class_count == 0) throw Error("class_count must be positive");
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> labels(node_count, kUnset);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError(line_no, "expected 'node_id class_id'");
    const auto raw = parse_number<std::int64_t>(fields[0], line_no, "node id");
    const auto cls = parse_number<std::int64_t>(fields[1], line_no, "class id");
    std::int64_t node = raw;
    if (ids) {
      auto mapped = ids->find(raw);
      if (!mapped) continue;  // labeled node absent from the edge list
      node = *mapped;
    }
    if (node < 0 || static_cast<std::size_t>(node) >= node_count) {
      throw ParseError(line_no, "node " + std::to_string(raw) + " out of range");
    }
    if (cls < 0 || static_cast<std::size_t>(cls) >= class_count) {
      throw ParseError(line_no, "class id " + std::to_string(cls) + " out of range [0, " +
                                    std::to_string(class_count) + ")");
    }
    if (labels[node] != kUnset) throw ParseError(line_no, "duplicate node " + std::to_string(raw));
    labels[node] = static_cast<std::uint32_t>(cls);
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    if (labels[v] == kUnset) {
      const auto shown = ids ? ids->external(static_cast<NodeId>(v)) : static_cast<std::int64_t>(v);
      throw ParseError(0, "missing label for node " + std::to_string(shown));
    }
  }
  return GraphSignal::from_labels(std::move(labels), class_count);
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(0, "manifest " + path.string() + ": " + ex.what());
  }
  DatasetManifest m;
  try {
    m.name = j.at("name").get<std::string>();
    m.edge_file = j.at("edge_file").get<std::string>();
    m.label_file = j.at("label_file").get<std::string>();
    const auto classes = j.at("class_count").get<std::int64_t>();
    if (classes <= 0) throw Error("manifest " + path.string() + ": class_count must be positive");
    m.class_count = static_cast<std::size_t>(classes);
    m.remap_ids = j.value("remap_ids", false);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(0, "manifest " + path.string() + ": " + ex.what());
  }
  const auto base = path.parent_path();
  if (m.edge_file.is_relative()) m.edge_file = base / m.edge_file;
  if (m.label_file.is_relative()) m.label_file = base / m.label_file;
  return m;
}

Dataset load_dataset(const DatasetManifest& manifest) {
  std::ifstream edges(manifest.edge_file);
  if (!edges) throw Error("cannot open edge file " + manifest.edge_file.string());
  std::ifstream labels(manifest.label_file);
  if (!labels) throw Error("cannot open label file " + manifest.label_file.string());
  Dataset d;
  d.name = manifest.name;
  if (manifest.remap_ids) {
    NodeIdMap ids;
    d.graph = load_edge_list_remapped(edges, ids);
    d.signal = load_labels(labels, manifest.class_count, d.graph.node_count(), &ids);
  } else {
    d.graph = load_edge_list(edges);
    // The label file may name isolated nodes beyond the largest edge endpoint.
    std::stringstream buffered;
    buffered << labels.rdbuf();
    std::size_t max_node = 0;
    {
      std::string line;
      std::istringstream scan(buffered.str());
      while (std::getline(scan, line)) {
        auto fields = split_fields(line);
        if (fields.size() == 2) {
          std::int64_t v = 0;
          auto [p, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), v);
          if (ec == std::errc{} && v >= 0) max_node = std::max<std::size_t>(max_node, v + 1);
        }
      }
    }
    if (max_node > d.graph.node_count()) {
      d.graph = Graph::from_edges(max_node, {d.graph.edges().begin(), d.graph.edges().end()});
    }
    buffered.clear();
    buffered.seekg(0);
    d.signal = load_labels(buffered, manifest.class_count, d.graph.node_count());
  }
  return d;
}

}  // namespace homest
