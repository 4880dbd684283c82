#include "homest/inclusion.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "homest/error.hpp"
#include "homest/format.hpp"
#include "homest/parallel.hpp"

namespace homest {

namespace {

std::size_t distinct_endpoints(NodeId a, NodeId b, NodeId c, NodeId d) {
  std::size_t m = 2;
  if (c != a && c != b) ++m;
  if (d != a && d != b && d != c) ++m;
  return m;
}

double joint_for(const std::variant<std::monostate, BernoulliDesign, SrsDesign, EmpiricalJoint>& rule,
                 std::size_t node_count, std::size_t endpoints) {
  if (const auto* b = std::get_if<BernoulliDesign>(&rule)) {
    return analytic_joint(SampleDesign{*b}, node_count, endpoints);
  }
  if (const auto* s = std::get_if<SrsDesign>(&rule)) {
    return analytic_joint(SampleDesign{*s}, node_count, endpoints);
  }
  throw EstimationError("joint inclusion probabilities are not endpoint-symmetric for this model");
}

}  // namespace

std::string_view to_string(InclusionSource source) {
  switch (source) {
    case InclusionSource::analytic: return "analytic";
    case InclusionSource::approximate: return "approximate";
    case InclusionSource::empirical: return "empirical";
  }
  return "unknown";
}

double InclusionModel::joint(const SampledEdge& a, const SampledEdge& b) const {
  if (const auto* emp = std::get_if<EmpiricalJoint>(&joint_rule)) {
    return emp->frequency[static_cast<std::size_t>(a.parent) * emp->edge_count + b.parent];
  }
  if (!has_joint()) {
    throw EstimationError("joint inclusion probabilities unavailable for this design");
  }
  if (a.parent == b.parent) return pi.at(a.parent);
  return joint_for(joint_rule, node_count, distinct_endpoints(a.i, a.j, b.i, b.j));
}

double InclusionModel::joint_by_endpoints(std::size_t endpoints) const {
  return joint_for(joint_rule, node_count, endpoints);
}

double analytic_edge_pi(const SampleDesign& design, std::size_t node_count) {
  return analytic_joint(design, node_count, 2);
}

double analytic_joint(const SampleDesign& design, std::size_t node_count, std::size_t endpoints) {
  if (endpoints < 2 || endpoints > 4) throw Error("an edge pair spans 2 to 4 endpoints");
  if (const auto* b = std::get_if<BernoulliDesign>(&design.variant)) {
    return std::pow(b->p, static_cast<double>(endpoints));
  }
  if (const auto* s = std::get_if<SrsDesign>(&design.variant)) {
    if (s->n_star < endpoints) return 0.0;
    double ratio = 1.0;
    for (std::size_t k = 0; k < endpoints; ++k) {
      ratio *= static_cast<double>(s->n_star - k) / static_cast<double>(node_count - k);
    }
    return ratio;
  }
  throw DesignError("traceroute inclusion has no closed form; use approx_pi_traceroute or empirical_pi");
}

double analytic_joint(const SampleDesign& design, const Graph& g, EdgeId e, EdgeId f) {
  const auto& a = g.edge(e);
  const auto& b = g.edge(f);
  return analytic_joint(design, g.node_count(), distinct_endpoints(a.i, a.j, b.i, b.j));
}

InclusionModel analytic_pi(const SampleDesign& design, const Graph& g) {
  design.validate(g.node_count());
  InclusionModel model;
  model.source = InclusionSource::analytic;
  model.design = design;
  model.node_count = g.node_count();
  model.pi.assign(g.edge_count(), analytic_edge_pi(design, g.node_count()));
  if (const auto* b = std::get_if<BernoulliDesign>(&design.variant)) {
    model.joint_rule = *b;
  } else {
    model.joint_rule = std::get<SrsDesign>(design.variant);
  }
  return model;
}

BetweennessTable edge_betweenness(const Graph& g, std::size_t threads) {
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  constexpr std::size_t kBlocks = 64;
  const std::size_t blocks = std::min(kBlocks, std::max<std::size_t>(n, 1));
  std::vector<std::vector<double>> partial(blocks);

  parallel_for(blocks, threads, [&](std::size_t block) {
    auto& acc = partial[block];
    acc.assign(m, 0.0);
    std::vector<double> delta(n);
    const std::size_t begin = block * n / blocks;
    const std::size_t end = (block + 1) * n / blocks;
    for (std::size_t s = begin; s < end; ++s) {
      const auto tree = bfs_tree(g, static_cast<NodeId>(s));
      for (NodeId v : tree.order) delta[v] = 0.0;
      for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
        const NodeId w = *it;
        if (w == s) continue;
        const double share = (1.0 + delta[w]) / tree.path_count[w];
        for (const auto& nb : g.neighbors(w)) {
          if (tree.distance[nb.node] + 1 != tree.distance[w]) continue;
          const double credit = tree.path_count[nb.node] * share;
          acc[nb.edge] += credit;
          delta[nb.node] += credit;
        }
      }
    }
  });

  BetweennessTable table;
  table.b.assign(m, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t e = 0; e < m; ++e) table.b[e] += acc[e];
  }
  return table;
}

void write_betweenness_csv(std::ostream& out, const Graph& g, const BetweennessTable& table) {
  out << "i,j,b\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    out << edge.i << ',' << edge.j << ',' << format_double(table.b.at(e)) << '\n';
  }
}

InclusionModel approx_pi_traceroute(const BetweennessTable& table, std::size_t n_sources,
                                    std::size_t n_targets, std::size_t node_count) {
  if (node_count == 0) throw DesignError("empty graph");
  InclusionModel model;
  model.source = InclusionSource::approximate;
  model.design = SampleDesign::traceroute(n_sources, n_targets);
  model.node_count = node_count;
  const double rate = static_cast<double>(n_sources) * static_cast<double>(n_targets) /
                      (static_cast<double>(node_count) * static_cast<double>(node_count));
  model.pi.reserve(table.b.size());
  for (double b : table.b) {
    double pi = b > 0.0 ? -std::expm1(-b * rate) : 0.0;
    if (b > 0.0 && pi <= 0.0) pi = std::numeric_limits<double>::min();
    model.pi.push_back(std::min(pi, 1.0));
  }
  return model;
}

InclusionModel empirical_pi(const Graph& g, const SampleDesign& design, std::size_t replications,
                            std::size_t threads, bool with_joint) {
  if (replications < 1) throw DesignError("empirical_pi needs at least one replication");
  design.validate(g.node_count());
  const std::size_t m = g.edge_count();
  const std::size_t chunks = std::min(replications, resolve_threads(threads) * 4);
  std::vector<std::vector<std::uint64_t>> counts(chunks);
  std::vector<std::vector<std::uint64_t>> pair_counts(with_joint ? chunks : 0);

  parallel_for(chunks, threads, [&](std::size_t chunk) {
    auto& mine = counts[chunk];
    mine.assign(m, 0);
    if (with_joint) pair_counts[chunk].assign(m * m, 0);
    const std::size_t begin = chunk * replications / chunks;
    const std::size_t end = (chunk + 1) * replications / chunks;
    for (std::size_t r = begin; r < end; ++r) {
      const auto sample = draw_sample(g, design.with_seed(split_seed(design.seed, r)), false);
      for (const auto& e : sample.edges) ++mine[e.parent];
      if (with_joint) {
        auto& pairs = pair_counts[chunk];
        for (const auto& a : sample.edges) {
          for (const auto& b : sample.edges) ++pairs[static_cast<std::size_t>(a.parent) * m + b.parent];
        }
      }
    }
  });

  InclusionModel model;
  model.source = InclusionSource::empirical;
  model.design = design;
  model.node_count = g.node_count();
  model.replications = replications;
  model.pi.assign(m, 0.0);
  const double scale = 1.0 / static_cast<double>(replications);
  std::vector<std::uint64_t> total(m, 0);
  for (const auto& c : counts) {
    for (std::size_t e = 0; e < m; ++e) total[e] += c[e];
  }
  for (std::size_t e = 0; e < m; ++e) model.pi[e] = static_cast<double>(total[e]) * scale;
  if (with_joint) {
    EmpiricalJoint joint;
    joint.edge_count = m;
    joint.frequency.assign(m * m, 0.0);
    std::vector<std::uint64_t> pair_total(m * m, 0);
    for (const auto& c : pair_counts) {
      for (std::size_t k = 0; k < m * m; ++k) pair_total[k] += c[k];
    }
    for (std::size_t k = 0; k < m * m; ++k) joint.frequency[k] = static_cast<double>(pair_total[k]) * scale;
    model.joint_rule = std::move(joint);
  }
  return model;
}

void attach_inclusion(SampledGraph& sample, const InclusionModel& model, double floor) {
  for (auto& e : sample.edges) {
    if (e.parent >= model.pi.size()) throw EstimationError("inclusion model does not cover the sample");
    const double pi = model.pi[e.parent];
    if (!(pi >= floor)) {
      std::string msg = "sampled edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                        ") has inclusion probability " + format_double(pi) + " below the floor";
      if (model.source == InclusionSource::approximate) {
        msg += "; the betweenness approximation disagrees with the realization, use empirical inclusion";
      } else if (model.source == InclusionSource::empirical) {
        msg += "; the edge was never observed by the Monte Carlo oracle, increase its replications";
      }
      throw EstimationError(msg);
    }
    e.pi = pi;
  }
}

}  // namespace homest
