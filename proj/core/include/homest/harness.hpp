#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homest/estimator.hpp"
#include "homest/graph.hpp"
#include "homest/inclusion.hpp"
#include "homest/metrics.hpp"

namespace homest {

/// Seed used by every entry point when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20250101;

enum class DesignKind { bernoulli, srs, traceroute };
std::string_view to_string(DesignKind kind);
std::optional<DesignKind> parse_design_kind(std::string_view name);

struct MetricRequest {
  MetricKind kind = MetricKind::dirichlet_total;
  EstimatorMode mode = EstimatorMode::ht_total;
};

/// One Monte Carlo study on one dataset.
///
/// Sweep values are interpreted per design: Bernoulli retention probability
/// p, SRS node fraction (n* = round(value * n)), or traceroute probe rate
/// (n_S = n_T = max(1, round(value * n))).
///
/// Seeding: replication r of sweep value k uses
///   split_seed(split_seed(base_seed, k), r)
/// and the empirical inclusion oracle of sweep value k uses
///   split_seed(split_seed(base_seed ^ kOracleStream, k), 0).
struct ExperimentConfig {
  std::string label = "experiment";
  DesignKind design = DesignKind::srs;
  std::vector<double> sweep{0.3};
  std::vector<MetricRequest> metrics;
  std::size_t replications = 200;
  std::uint64_t base_seed = kDefaultSeed;
  /// analytic for induced designs; approximate or empirical for traceroute.
  InclusionSource inclusion = InclusionSource::analytic;
  std::size_t oracle_replications = 100000;
  bool compute_variance = true;
  std::size_t histogram_bins = 20;
  /// Worker cap; 0 = all cores. Results do not depend on it.
  std::size_t threads = 0;

  static constexpr std::uint64_t kOracleStream = 0x6f7261636c650000ULL;

  /// Throws DesignError on empty sweeps, T = 0, sweep values invalid for the
  /// design, or metric/mode combinations the estimator does not support.
  void validate() const;
};

/// BS node sampling, p in {0.1, 0.3, 0.5}, T = 200, HT Dirichlet energy.
ExperimentConfig test_case_dispersion();
/// SRS of 30% of nodes, T = 200, Dirichlet energy plus edge and node homophily.
ExperimentConfig test_case_metrics();
/// Traceroute with probe rates {0.1, 0.2, 0.4}, T = 200, empirical inclusion.
ExperimentConfig test_case_traceroute();

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges; a degenerate range has one bin
  std::vector<std::size_t> counts;
};

/// Equal-width bins spanning [min, max]; the last bin is closed.
Histogram histogram(std::span<const double> points, std::size_t bins);

struct Summary {
  std::size_t valid = 0;
  std::size_t invalid = 0;
  double mean = 0.0;
  double bias = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  Histogram histogram;
};

struct MetricRun {
  MetricRequest metric;
  double ground_truth = 0.0;
  std::vector<EstimateReport> reports;
  Summary summary;
};

struct SweepRun {
  double value = 0.0;
  SampleDesign design;  // seed 0; replications override it
  InclusionSource inclusion = InclusionSource::analytic;
  std::size_t oracle_replications = 0;
  std::vector<MetricRun> metrics;
};

struct RunRecord {
  ExperimentConfig config;
  std::string dataset;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::vector<SweepRun> sweeps;
};

/// Builds the concrete design for one sweep value on an n-node graph.
SampleDesign design_for(DesignKind kind, double value, std::size_t node_count);

RunRecord run_experiment(const ExperimentConfig& config, const Dataset& dataset);

/// Summary statistics of the valid points among `reports`. Throws
/// homest::Error when there are none.
Summary summarize_reports(std::span<const EstimateReport> reports, double ground_truth,
                          std::size_t bins);

struct SummaryRow {
  std::string dataset;
  MetricKind kind;
  EstimatorMode mode;
  std::string design;
  double param;
  double ground_truth;
  double mean;
  double bias;
  double stddev;
  double std_error;
  std::size_t valid;
  std::size_t invalid;
};

/// One row per (dataset, metric, design, sweep value). Throws on empty input.
std::vector<SummaryRow> summarize(std::span<const RunRecord> records);

}  // namespace homest
