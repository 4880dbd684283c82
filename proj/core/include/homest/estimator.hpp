#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homest/graph.hpp"
#include "homest/inclusion.hpp"
#include "homest/metrics.hpp"
#include "homest/sampling.hpp"

namespace homest {

enum class EstimatorMode { ht_total, plug_in, hajek_ratio, known_denominator };
enum class VarianceStatus { exact_design, unsupported, negative_clamped };

std::string_view to_string(EstimatorMode mode);
std::string_view to_string(VarianceStatus status);
std::optional<EstimatorMode> parse_estimator_mode(std::string_view name);

/// Mode used when none is requested: ht_total for the raw Dirichlet energy,
/// Hajek ratio for the normalized metrics, plug-in for node homophily.
EstimatorMode default_mode(MetricKind kind);
bool mode_supported(MetricKind kind, EstimatorMode mode);

struct VarianceEstimate {
  std::optional<double> value;
  VarianceStatus status = VarianceStatus::unsupported;
  /// The double sum before clamping; equals *value unless negative_clamped.
  /// Its design expectation is the variance of the HT total, which the
  /// clamped value does not preserve.
  double unclamped = 0.0;
};

struct EstimateReport {
  MetricKind kind = MetricKind::dirichlet_total;
  EstimatorMode mode = EstimatorMode::ht_total;
  double point = 0.0;
  /// False when the replication is degenerate (zero denominator, no eligible
  /// nodes); `point` is then 0 and `invalid_reason` says why.
  bool valid = true;
  std::string invalid_reason;
  std::optional<double> variance;
  VarianceStatus variance_status = VarianceStatus::unsupported;
  std::size_t sampled_nodes = 0;
  std::size_t sampled_edges = 0;
  std::optional<SampleDesign> design;
};

/// Per-sampled-edge values of `quantity`, aligned with sample.edges.
std::vector<double> sample_values(const GraphSignal& s, const SampledGraph& sample, EdgeQuantity quantity);

/// Horvitz-Thompson total: sum of values[k] / pi(e_k) over sampled edges.
double ht_total(const SampledGraph& sample, std::span<const double> values,
                const InclusionModel& incl, double floor = kDefaultPiFloor);

/// Unweighted sum over the sample. Its expectation is sum_E V_e pi_e, so it
/// is biased whenever pi < 1.
double plug_in_total(const SampledGraph& sample, std::span<const double> values);

/// Variance estimator of ht_total:
///   sum_{e,f in E*} V_e V_f (1 / (pi_e pi_f) - 1 / pi_ef),  pi_ee = pi_e.
/// Endpoint-symmetric designs use an O(|V*| + |E*|) grouping by how many
/// nodes each edge pair spans; other models fall back to the pairwise sum.
/// Negative results are clamped to 0 with status negative_clamped; models
/// without joint probabilities give status unsupported and no value.
/// Throws EstimationError when a co-observed pair has zero joint probability.
VarianceEstimate ht_variance(const SampledGraph& sample, std::span<const double> values,
                             const InclusionModel& incl, double floor = kDefaultPiFloor);

/// The O(|E*|^2) double sum, valid for any model with joint probabilities.
VarianceEstimate ht_variance_pairwise(const SampledGraph& sample, std::span<const double> values,
                                      const InclusionModel& incl, double floor = kDefaultPiFloor);

/// Ratio of two HT totals; nullopt when the denominator total is zero.
std::optional<double> hajek_ratio(const SampledGraph& sample, std::span<const double> numerator,
                                  std::span<const double> denominator, const InclusionModel& incl,
                                  double floor = kDefaultPiFloor);

struct EstimateOptions {
  bool compute_variance = true;
  double pi_floor = kDefaultPiFloor;
};

/// Estimates `kind` from one sample. `parent` may be null unless the mode is
/// known_denominator, which divides by the parent's 2 * total_edge_weight
/// (Dirichlet) or total_edge_weight (edge homophily).
EstimateReport estimate_metric(const Graph* parent, const GraphSignal& s, const SampledGraph& sample,
                               MetricKind kind, EstimatorMode mode, const InclusionModel& incl,
                               const EstimateOptions& options = {});

}  // namespace homest
