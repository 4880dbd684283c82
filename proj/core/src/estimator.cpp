#include "homest/estimator.hpp"

#include <cmath>

#include "homest/error.hpp"
#include "homest/format.hpp"

namespace homest {

namespace {

double checked_pi(const SampledEdge& e, const InclusionModel& incl, double floor) {
  if (e.parent >= incl.pi.size()) throw EstimationError("inclusion model does not cover the sample");
  const double pi = incl.pi[e.parent];
  if (!(pi >= floor) || pi > 1.0) {
    throw EstimationError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                          ") has unusable inclusion probability " + format_double(pi));
  }
  return pi;
}

void check_aligned(const SampledGraph& sample, std::span<const double> values) {
  if (values.size() != sample.edges.size()) {
    throw EstimationError("value count does not match the number of sampled edges");
  }
}

VarianceEstimate finish(double v) {
  if (v < 0.0) return {0.0, VarianceStatus::negative_clamped, v};
  return {v, VarianceStatus::exact_design, v};
}

// Sum of V_e V_f over ordered pairs of sampled edges, split by how many
// distinct nodes the pair spans, with the number of such pairs.
struct PairSums {
  double same = 0.0, adjacent = 0.0, disjoint = 0.0;
  double adjacent_pairs = 0.0, disjoint_pairs = 0.0;
};

PairSums group_pairs(const SampledGraph& sample, std::span<const double> values) {
  std::vector<double> node_sum(sample.parent_node_count, 0.0);
  std::vector<double> node_deg(sample.parent_node_count, 0.0);
  double total = 0.0;
  PairSums sums;
  for (std::size_t k = 0; k < sample.edges.size(); ++k) {
    const auto& e = sample.edges[k];
    const double v = values[k];
    total += v;
    sums.same += v * v;
    node_sum[e.i] += v;
    node_sum[e.j] += v;
    node_deg[e.i] += 1.0;
    node_deg[e.j] += 1.0;
  }
  // Each node v contributes (sum_{e ni v} V_e)^2: the diagonal twice overall
  // (once per endpoint) and every ordered adjacent pair once.
  double star = 0.0;
  double star_pairs = 0.0;
  for (std::size_t v = 0; v < node_sum.size(); ++v) {
    if (node_deg[v] == 0.0) continue;
    star += node_sum[v] * node_sum[v];
    star_pairs += node_deg[v] * (node_deg[v] - 1.0);
  }
  const double m = static_cast<double>(sample.edges.size());
  sums.adjacent = star - 2.0 * sums.same;
  sums.disjoint = total * total - sums.same - sums.adjacent;
  sums.adjacent_pairs = star_pairs;
  sums.disjoint_pairs = m * m - m - star_pairs;
  return sums;
}

}  // namespace

std::string_view to_string(EstimatorMode mode) {
  switch (mode) {
    case EstimatorMode::ht_total: return "ht_total";
    case EstimatorMode::plug_in: return "plug_in";
    case EstimatorMode::hajek_ratio: return "hajek_ratio";
    case EstimatorMode::known_denominator: return "known_denominator";
  }
  return "unknown";
}

std::string_view to_string(VarianceStatus status) {
  switch (status) {
    case VarianceStatus::exact_design: return "exact_design";
    case VarianceStatus::unsupported: return "unsupported";
    case VarianceStatus::negative_clamped: return "negative_clamped";
  }
  return "unknown";
}

std::optional<EstimatorMode> parse_estimator_mode(std::string_view name) {
  if (name == "ht_total" || name == "ht") return EstimatorMode::ht_total;
  if (name == "plug_in") return EstimatorMode::plug_in;
  if (name == "hajek_ratio" || name == "hajek") return EstimatorMode::hajek_ratio;
  if (name == "known_denominator") return EstimatorMode::known_denominator;
  return std::nullopt;
}

EstimatorMode default_mode(MetricKind kind) {
  switch (kind) {
    case MetricKind::dirichlet_total: return EstimatorMode::ht_total;
    case MetricKind::dirichlet_normalized:
    case MetricKind::edge_homophily: return EstimatorMode::hajek_ratio;
    case MetricKind::node_homophily: return EstimatorMode::plug_in;
  }
  return EstimatorMode::plug_in;
}

bool mode_supported(MetricKind kind, EstimatorMode mode) {
  switch (kind) {
    case MetricKind::dirichlet_total:
      return mode == EstimatorMode::ht_total || mode == EstimatorMode::plug_in;
    case MetricKind::dirichlet_normalized:
    case MetricKind::edge_homophily: return mode != EstimatorMode::ht_total;
    case MetricKind::node_homophily: return mode == EstimatorMode::plug_in;
  }
  return false;
}

std::vector<double> sample_values(const GraphSignal& s, const SampledGraph& sample, EdgeQuantity quantity) {
  if (s.node_count() != sample.parent_node_count) {
    throw Error("signal rows do not match the sampled graph's parent");
  }
  std::vector<double> values;
  values.reserve(sample.edges.size());
  std::span<const std::uint32_t> labels;
  if (quantity == EdgeQuantity::same_label_weight) labels = s.labels();
  for (const auto& e : sample.edges) {
    switch (quantity) {
      case EdgeQuantity::variation: values.push_back(e.w * s.squared_distance(e.i, e.j)); break;
      case EdgeQuantity::same_label_weight: values.push_back(labels[e.i] == labels[e.j] ? e.w : 0.0); break;
      case EdgeQuantity::weight: values.push_back(e.w); break;
      case EdgeQuantity::twice_weight: values.push_back(2.0 * e.w); break;
    }
  }
  return values;
}

double ht_total(const SampledGraph& sample, std::span<const double> values,
                const InclusionModel& incl, double floor) {
  check_aligned(sample, values);
  double total = 0.0;
  for (std::size_t k = 0; k < sample.edges.size(); ++k) {
    total += values[k] / checked_pi(sample.edges[k], incl, floor);
  }
  return total;
}

double plug_in_total(const SampledGraph& sample, std::span<const double> values) {
  check_aligned(sample, values);
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

VarianceEstimate ht_variance_pairwise(const SampledGraph& sample, std::span<const double> values,
                                      const InclusionModel& incl, double floor) {
  check_aligned(sample, values);
  if (!incl.has_joint()) return {std::nullopt, VarianceStatus::unsupported};
  const auto& edges = sample.edges;
  std::vector<double> pi(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) pi[k] = checked_pi(edges[k], incl, floor);
  double sum = 0.0;
  for (std::size_t a = 0; a < edges.size(); ++a) {
    if (values[a] == 0.0) continue;
    for (std::size_t b = 0; b < edges.size(); ++b) {
      if (values[b] == 0.0) continue;
      const double joint = a == b ? pi[a] : incl.joint(edges[a], edges[b]);
      if (!(joint > 0.0)) {
        throw EstimationError("edges observed together have zero joint inclusion probability");
      }
      sum += values[a] * values[b] * (1.0 / (pi[a] * pi[b]) - 1.0 / joint);
    }
  }
  return finish(sum);
}

VarianceEstimate ht_variance(const SampledGraph& sample, std::span<const double> values,
                             const InclusionModel& incl, double floor) {
  check_aligned(sample, values);
  if (!incl.has_joint()) return {std::nullopt, VarianceStatus::unsupported};
  if (!incl.endpoint_symmetric()) return ht_variance_pairwise(sample, values, incl, floor);
  if (sample.edges.empty()) return {0.0, VarianceStatus::exact_design, 0.0};

  for (const auto& e : sample.edges) checked_pi(e, incl, floor);
  const double pi = incl.joint_by_endpoints(2);
  const double q3 = incl.joint_by_endpoints(3);
  const double q4 = incl.joint_by_endpoints(4);
  const auto sums = group_pairs(sample, values);
  const double base = 1.0 / (pi * pi);
  double v = sums.same * (base - 1.0 / pi);
  if (sums.adjacent_pairs > 0.0) {
    if (!(q3 > 0.0)) throw EstimationError("edges observed together have zero joint inclusion probability");
    v += sums.adjacent * (base - 1.0 / q3);
  }
  if (sums.disjoint_pairs > 0.0) {
    if (!(q4 > 0.0)) throw EstimationError("edges observed together have zero joint inclusion probability");
    v += sums.disjoint * (base - 1.0 / q4);
  }
  return finish(v);
}

std::optional<double> hajek_ratio(const SampledGraph& sample, std::span<const double> numerator,
                                  std::span<const double> denominator, const InclusionModel& incl,
                                  double floor) {
  const double den = ht_total(sample, denominator, incl, floor);
  if (den == 0.0) return std::nullopt;
  return ht_total(sample, numerator, incl, floor) / den;
}

EstimateReport estimate_metric(const Graph* parent, const GraphSignal& s, const SampledGraph& sample,
                               MetricKind kind, EstimatorMode mode, const InclusionModel& incl,
                               const EstimateOptions& options) {
  if (!mode_supported(kind, mode)) {
    throw EstimationError("mode " + std::string(to_string(mode)) + " is not supported for " +
                          std::string(to_string(kind)));
  }
  EstimateReport report;
  report.kind = kind;
  report.mode = mode;
  report.design = sample.design;
  report.sampled_nodes = sample.nodes.size();
  report.sampled_edges = sample.edges.size();
  auto invalidate = [&](std::string reason) {
    report.valid = false;
    report.point = 0.0;
    report.invalid_reason = std::move(reason);
  };
  const double floor = options.pi_floor;

  if (kind == MetricKind::node_homophily) {
    std::vector<Edge> edges;
    edges.reserve(sample.edges.size());
    for (const auto& e : sample.edges) edges.push_back({e.i, e.j, e.w});
    if (auto value = node_homophily_of(edges, s.labels())) {
      report.point = *value;
    } else {
      invalidate("no sampled node has a sampled neighbor");
    }
    return report;
  }

  const auto numerator_q =
      kind == MetricKind::edge_homophily ? EdgeQuantity::same_label_weight : EdgeQuantity::variation;
  const auto numerator = sample_values(s, sample, numerator_q);

  if (kind == MetricKind::dirichlet_total) {
    if (mode == EstimatorMode::plug_in) {
      report.point = plug_in_total(sample, numerator);
    } else {
      report.point = ht_total(sample, numerator, incl, floor);
      if (options.compute_variance) {
        const auto var = ht_variance(sample, numerator, incl, floor);
        report.variance = var.value;
        report.variance_status = var.status;
      }
    }
    return report;
  }

  const auto denominator_q =
      kind == MetricKind::edge_homophily ? EdgeQuantity::weight : EdgeQuantity::twice_weight;
  switch (mode) {
    case EstimatorMode::plug_in: {
      const auto denominator = sample_values(s, sample, denominator_q);
      const double den = plug_in_total(sample, denominator);
      if (den == 0.0) {
        invalidate("empty sample");
      } else {
        report.point = plug_in_total(sample, numerator) / den;
      }
      break;
    }
    case EstimatorMode::hajek_ratio: {
      const auto denominator = sample_values(s, sample, denominator_q);
      if (auto ratio = hajek_ratio(sample, numerator, denominator, incl, floor)) {
        report.point = *ratio;
      } else {
        invalidate("zero denominator total");
      }
      break;
    }
    case EstimatorMode::known_denominator: {
      if (parent == nullptr) throw EstimationError("known_denominator mode requires the parent graph");
      double den = total_edge_weight(*parent);
      if (kind == MetricKind::dirichlet_normalized) den *= 2.0;
      if (den == 0.0) throw EstimationError("parent graph has no edges");
      report.point = ht_total(sample, numerator, incl, floor) / den;
      if (options.compute_variance) {
        const auto var = ht_variance(sample, numerator, incl, floor);
        report.variance_status = var.status;
        if (var.value) report.variance = *var.value / (den * den);
      }
      break;
    }
    case EstimatorMode::ht_total: break;
  }
  return report;
}

}  // namespace homest
