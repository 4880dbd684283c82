#include "homest/harness.hpp"

#include <algorithm>
#include <cmath>

#include "homest/error.hpp"
#include "homest/format.hpp"
#include "homest/parallel.hpp"

namespace homest {

std::string_view to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::bernoulli: return "bernoulli";
    case DesignKind::srs: return "srs";
    case DesignKind::traceroute: return "traceroute";
  }
  return "unknown";
}

std::optional<DesignKind> parse_design_kind(std::string_view name) {
  if (name == "bernoulli" || name == "bs") return DesignKind::bernoulli;
  if (name == "srs") return DesignKind::srs;
  if (name == "traceroute") return DesignKind::traceroute;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw DesignError("replications must be at least 1");
  if (sweep.empty()) throw DesignError("sweep must contain at least one value");
  if (metrics.empty()) throw DesignError("no metrics requested");
  if (histogram_bins < 1) throw DesignError("histogram needs at least one bin");
  for (double v : sweep) {
    if (!(v > 0.0) || v > 1.0) {
      throw DesignError("sweep value " + format_double(v) + " outside (0, 1] for " +
                        std::string(to_string(design)));
    }
  }
  for (const auto& m : metrics) {
    if (!mode_supported(m.kind, m.mode)) {
      throw DesignError("mode " + std::string(to_string(m.mode)) + " is not supported for " +
                        std::string(to_string(m.kind)));
    }
  }
  if (design == DesignKind::traceroute) {
    if (inclusion == InclusionSource::analytic) {
      throw DesignError("traceroute has no analytic inclusion probabilities; use approximate or empirical");
    }
  } else if (inclusion == InclusionSource::approximate) {
    throw DesignError("the betweenness approximation applies to traceroute only");
  }
  if (inclusion == InclusionSource::empirical && oracle_replications < 1) {
    throw DesignError("empirical inclusion needs at least one oracle replication");
  }
}

ExperimentConfig test_case_dispersion() {
  ExperimentConfig c;
  c.label = "dispersion_bernoulli";
  c.design = DesignKind::bernoulli;
  c.sweep = {0.1, 0.3, 0.5};
  c.metrics = {{MetricKind::dirichlet_total, EstimatorMode::ht_total},
               {MetricKind::dirichlet_normalized, EstimatorMode::known_denominator}};
  return c;
}

ExperimentConfig test_case_metrics() {
  ExperimentConfig c;
  c.label = "metrics_srs";
  c.design = DesignKind::srs;
  c.sweep = {0.3};
  c.metrics = {{MetricKind::dirichlet_total, EstimatorMode::ht_total},
               {MetricKind::dirichlet_normalized, EstimatorMode::hajek_ratio},
               {MetricKind::dirichlet_normalized, EstimatorMode::known_denominator},
               {MetricKind::edge_homophily, EstimatorMode::hajek_ratio},
               {MetricKind::edge_homophily, EstimatorMode::known_denominator},
               {MetricKind::node_homophily, EstimatorMode::plug_in}};
  return c;
}

ExperimentConfig test_case_traceroute() {
  ExperimentConfig c;
  c.label = "traceroute";
  c.design = DesignKind::traceroute;
  c.sweep = {0.1, 0.2, 0.4};
  c.inclusion = InclusionSource::empirical;
  c.metrics = {{MetricKind::dirichlet_total, EstimatorMode::ht_total},
               {MetricKind::dirichlet_normalized, EstimatorMode::hajek_ratio},
               {MetricKind::edge_homophily, EstimatorMode::hajek_ratio}};
  return c;
}

Histogram histogram(std::span<const double> points, std::size_t bins) {
  if (points.empty()) throw Error("histogram of an empty sample");
  if (bins < 1) throw Error("histogram needs at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(points.begin(), points.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  Histogram h;
  if (!(hi > lo)) {
    h.edges = {lo, hi};
    h.counts = {points.size()};
    return h;
  }
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double x : points) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    ++h.counts[std::min(b, bins - 1)];
  }
  return h;
}

SampleDesign design_for(DesignKind kind, double value, std::size_t node_count) {
  switch (kind) {
    case DesignKind::bernoulli: return SampleDesign::bernoulli(value);
    case DesignKind::srs: return SampleDesign::srs_fraction(value, node_count);
    case DesignKind::traceroute: {
      const auto k = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::llround(value * static_cast<double>(node_count))));
      return SampleDesign::traceroute(k, k);
    }
  }
  throw DesignError("unknown design");
}

Summary summarize_reports(std::span<const EstimateReport> reports, double ground_truth, std::size_t bins) {
  std::vector<double> points;
  Summary s;
  for (const auto& r : reports) {
    if (r.valid) {
      points.push_back(r.point);
    } else {
      ++s.invalid;
    }
  }
  if (points.empty()) throw Error("all replications are invalid");
  s.valid = points.size();
  double sum = 0.0;
  for (double x : points) sum += x;
  s.mean = sum / static_cast<double>(points.size());
  double ss = 0.0;
  for (double x : points) ss += (x - s.mean) * (x - s.mean);
  s.stddev = points.size() > 1 ? std::sqrt(ss / static_cast<double>(points.size() - 1)) : 0.0;
  s.std_error = s.stddev / std::sqrt(static_cast<double>(points.size()));
  s.bias = s.mean - ground_truth;
  s.histogram = histogram(points, bins);
  return s;
}

RunRecord run_experiment(const ExperimentConfig& config, const Dataset& dataset) {
  config.validate();
  const Graph& g = dataset.graph;
  const GraphSignal& signal = dataset.signal;
  if (g.edge_count() == 0) throw Error("dataset " + dataset.name + " has no edges");

  RunRecord record;
  record.config = config;
  record.dataset = dataset.name;
  record.node_count = g.node_count();
  record.edge_count = g.edge_count();

  std::vector<double> truth;
  truth.reserve(config.metrics.size());
  for (const auto& m : config.metrics) truth.push_back(exact_metric(g, signal, m.kind));

  std::optional<BetweennessTable> betweenness;
  if (config.inclusion == InclusionSource::approximate) betweenness = edge_betweenness(g, config.threads);

  for (std::size_t k = 0; k < config.sweep.size(); ++k) {
    SweepRun sweep;
    sweep.value = config.sweep[k];
    sweep.design = design_for(config.design, sweep.value, g.node_count());
    sweep.design.validate(g.node_count());
    sweep.inclusion = config.inclusion;

    InclusionModel incl;
    switch (config.inclusion) {
      case InclusionSource::analytic: incl = analytic_pi(sweep.design, g); break;
      case InclusionSource::approximate: {
        const auto& t = std::get<TracerouteDesign>(sweep.design.variant);
        incl = approx_pi_traceroute(*betweenness, t.n_sources, t.n_targets, g.node_count());
        break;
      }
      case InclusionSource::empirical: {
        const auto oracle_seed = split_seed(split_seed(config.base_seed ^ ExperimentConfig::kOracleStream, k), 0);
        incl = empirical_pi(g, sweep.design.with_seed(oracle_seed), config.oracle_replications,
                            config.threads);
        sweep.oracle_replications = config.oracle_replications;
        break;
      }
    }

    const std::size_t metric_count = config.metrics.size();
    std::vector<std::vector<EstimateReport>> per_rep(config.replications);
    const std::uint64_t sweep_seed = split_seed(config.base_seed, k);
    EstimateOptions options;
    options.compute_variance = config.compute_variance;

    parallel_for(config.replications, config.threads, [&](std::size_t r) {
      const auto design = sweep.design.with_seed(split_seed(sweep_seed, r));
      const auto sample = draw_sample(g, design, false);
      auto& out = per_rep[r];
      out.reserve(metric_count);
      for (const auto& m : config.metrics) {
        try {
          out.push_back(estimate_metric(&g, signal, sample, m.kind, m.mode, incl, options));
        } catch (const EstimationError& ex) {
          if (config.inclusion != InclusionSource::empirical) throw;
          EstimateReport bad;
          bad.kind = m.kind;
          bad.mode = m.mode;
          bad.valid = false;
          bad.invalid_reason = ex.what();
          bad.design = design;
          bad.sampled_nodes = sample.nodes.size();
          bad.sampled_edges = sample.edges.size();
          out.push_back(std::move(bad));
        }
      }
    });

    for (std::size_t mi = 0; mi < metric_count; ++mi) {
      MetricRun run;
      run.metric = config.metrics[mi];
      run.ground_truth = truth[mi];
      run.reports.reserve(config.replications);
      for (auto& reps : per_rep) run.reports.push_back(std::move(reps[mi]));
      run.summary = summarize_reports(run.reports, run.ground_truth, config.histogram_bins);
      sweep.metrics.push_back(std::move(run));
    }
    record.sweeps.push_back(std::move(sweep));
  }
  return record;
}

std::vector<SummaryRow> summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw Error("nothing to summarize");
  std::vector<SummaryRow> rows;
  for (const auto& rec : records) {
    for (const auto& sweep : rec.sweeps) {
      for (const auto& m : sweep.metrics) {
        rows.push_back({rec.dataset, m.metric.kind, m.metric.mode,
                        sweep.design.kind_name() + ":" + sweep.design.parameters(), sweep.value,
                        m.ground_truth, m.summary.mean, m.summary.bias, m.summary.stddev,
                        m.summary.std_error, m.summary.valid, m.summary.invalid});
      }
    }
  }
  if (rows.empty()) throw Error("nothing to summarize");
  return rows;
}

}  // namespace homest
