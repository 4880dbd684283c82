#include "homest/serialize.hpp"

#include <ostream>

#include "homest/error.hpp"
#include "homest/format.hpp"
#include "json.hpp"

namespace homest {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json design_json(const SampleDesign& d) {
  json j;
  j["kind"] = d.kind_name();
  if (const auto* b = std::get_if<BernoulliDesign>(&d.variant)) {
    j["p"] = b->p;
  } else if (const auto* s = std::get_if<SrsDesign>(&d.variant)) {
    j["n_star"] = s->n_star;
  } else {
    const auto& t = std::get<TracerouteDesign>(d.variant);
    j["n_sources"] = t.n_sources;
    j["n_targets"] = t.n_targets;
    j["source_target_sampling"] = "independent_srs";
    j["tie_breaking"] = "uniform_shortest_path";
  }
  return j;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json report_json(const EstimateReport& r) {
  json j;
  j["metric"] = to_string(r.kind);
  j["mode"] = to_string(r.mode);
  j["point"] = r.point;
  j["valid"] = r.valid;
  if (!r.valid) j["invalid_reason"] = r.invalid_reason;
  j["variance"] = optional_number(r.variance);
  j["variance_status"] = to_string(r.variance_status);
  j["sampled_nodes"] = r.sampled_nodes;
  j["sampled_edges"] = r.sampled_edges;
  if (r.design) {
    j["design"] = design_json(*r.design);
    j["seed"] = r.design->seed;
  }
  return j;
}

json histogram_json(const Histogram& h) { return {{"edges", h.edges}, {"counts", h.counts}}; }

json config_json(const ExperimentConfig& c) {
  json metrics = json::array();
  for (const auto& m : c.metrics) metrics.push_back({{"metric", to_string(m.kind)}, {"mode", to_string(m.mode)}});
  return {{"label", c.label},
          {"design", to_string(c.design)},
          {"sweep", c.sweep},
          {"metrics", metrics},
          {"replications", c.replications},
          {"base_seed", c.base_seed},
          {"inclusion", to_string(c.inclusion)},
          {"oracle_replications", c.oracle_replications},
          {"compute_variance", c.compute_variance},
          {"histogram_bins", c.histogram_bins}};
}

std::string csv_optional(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

std::string to_json(const SampledGraph& sample) {
  json j;
  if (sample.design) {
    j["design"] = design_json(*sample.design);
    j["seed"] = sample.design->seed;
  } else {
    j["design"] = nullptr;
    j["seed"] = nullptr;
  }
  j["parent_nodes"] = sample.parent_node_count;
  j["nodes"] = sample.nodes;
  json edges = json::array();
  for (const auto& e : sample.edges) {
    edges.push_back({{"i", e.i}, {"j", e.j}, {"w", e.w}, {"pi", e.pi > 0.0 ? json(e.pi) : json(nullptr)}});
  }
  j["edges"] = std::move(edges);
  if (sample.design && !sample.design->is_induced()) {
    j["paths"] = sample.paths;
    j["unreachable_pairs"] = sample.unreachable_pairs;
  }
  return dump(j);
}

std::string to_json(const Graph& g, const InclusionModel& model) {
  json j;
  j["source"] = to_string(model.source);
  if (model.design) j["design"] = design_json(*model.design);
  if (model.source == InclusionSource::empirical) j["replications"] = model.replications;
  j["joint_available"] = model.has_joint();
  json edges = json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    edges.push_back({{"i", edge.i}, {"j", edge.j}, {"pi", model.pi.at(e)}, {"sampleable", model.sampleable(e)}});
  }
  j["edges"] = std::move(edges);
  return dump(j);
}

std::string to_json(const EstimateReport& report) { return dump(report_json(report)); }

std::string to_json(const RunRecord& record) {
  json j;
  j["config"] = config_json(record.config);
  j["dataset"] = record.dataset;
  j["nodes"] = record.node_count;
  j["edges"] = record.edge_count;
  json sweeps = json::array();
  for (const auto& s : record.sweeps) {
    json sj;
    sj["value"] = s.value;
    sj["design"] = design_json(s.design);
    sj["inclusion"] = to_string(s.inclusion);
    if (s.inclusion == InclusionSource::empirical) sj["oracle_replications"] = s.oracle_replications;
    json metrics = json::array();
    for (const auto& m : s.metrics) {
      json mj;
      mj["metric"] = to_string(m.metric.kind);
      mj["mode"] = to_string(m.metric.mode);
      mj["ground_truth"] = m.ground_truth;
      mj["summary"] = {{"valid", m.summary.valid},         {"invalid", m.summary.invalid},
                       {"mean", m.summary.mean},           {"bias", m.summary.bias},
                       {"stddev", m.summary.stddev},       {"std_error", m.summary.std_error},
                       {"histogram", histogram_json(m.summary.histogram)}};
      json reps = json::array();
      for (const auto& r : m.reports) {
        json rj = {{"point", r.point}, {"valid", r.valid}, {"variance", optional_number(r.variance)},
                   {"variance_status", to_string(r.variance_status)},
                   {"sampled_nodes", r.sampled_nodes}, {"sampled_edges", r.sampled_edges}};
        if (r.design) rj["seed"] = r.design->seed;
        reps.push_back(std::move(rj));
      }
      mj["replications"] = std::move(reps);
      metrics.push_back(std::move(mj));
    }
    sj["metrics"] = std::move(metrics);
    sweeps.push_back(std::move(sj));
  }
  j["sweeps"] = std::move(sweeps);
  return dump(j);
}

std::string to_json(const GridGraphon& w) {
  return dump({{"resolution", w.resolution}, {"values", w.values}});
}

std::string to_json(const ExperimentConfig& config) { return dump(config_json(config)); }

GridGraphon grid_graphon_from_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    GridGraphon w;
    w.resolution = j.at("resolution").get<std::size_t>();
    w.values = j.at("values").get<std::vector<double>>();
    w.validate();
    return w;
  } catch (const json::exception& ex) {
    throw ParseError(0, std::string("graphon JSON: ") + ex.what());
  }
}

ExperimentConfig experiment_config_from_json(std::string_view text) {
  ExperimentConfig c;
  try {
    const auto j = json::parse(text);
    c.label = j.value("label", c.label);
    if (j.contains("design")) {
      const auto name = j.at("design").get<std::string>();
      auto kind = parse_design_kind(name);
      if (!kind) throw ParseError(0, "unknown design '" + name + "'");
      c.design = *kind;
    }
    if (j.contains("sweep")) c.sweep = j.at("sweep").get<std::vector<double>>();
    if (j.contains("metrics")) {
      c.metrics.clear();
      for (const auto& m : j.at("metrics")) {
        const auto name = m.at("metric").get<std::string>();
        auto kind = parse_metric_kind(name);
        if (!kind) throw ParseError(0, "unknown metric '" + name + "'");
        MetricRequest req{*kind, default_mode(*kind)};
        if (m.contains("mode")) {
          const auto mode_name = m.at("mode").get<std::string>();
          auto mode = parse_estimator_mode(mode_name);
          if (!mode) throw ParseError(0, "unknown mode '" + mode_name + "'");
          req.mode = *mode;
        }
        c.metrics.push_back(req);
      }
    }
    c.replications = j.value("replications", c.replications);
    c.base_seed = j.value("base_seed", c.base_seed);
    if (j.contains("inclusion")) {
      const auto name = j.at("inclusion").get<std::string>();
      if (name == "analytic") c.inclusion = InclusionSource::analytic;
      else if (name == "approximate") c.inclusion = InclusionSource::approximate;
      else if (name == "empirical") c.inclusion = InclusionSource::empirical;
      else throw ParseError(0, "unknown inclusion source '" + name + "'");
    }
    c.oracle_replications = j.value("oracle_replications", c.oracle_replications);
    c.compute_variance = j.value("compute_variance", c.compute_variance);
    c.histogram_bins = j.value("histogram_bins", c.histogram_bins);
  } catch (const json::exception& ex) {
    throw ParseError(0, std::string("experiment config: ") + ex.what());
  }
  return c;
}

void write_estimate_csv_header(std::ostream& out) {
  out << "dataset,kind,design,param,seed,point,variance,status\n";
}

void write_estimate_csv_row(std::ostream& out, std::string_view dataset, const EstimateReport& r) {
  out << dataset << ',' << to_string(r.kind) << ',';
  if (r.design) {
    out << r.design->kind_name() << ",\"" << r.design->parameters() << "\"," << r.design->seed;
  } else {
    out << ",,";
  }
  out << ',' << (r.valid ? format_double(r.point) : "") << ',' << csv_optional(r.variance) << ','
      << (r.valid ? std::string(to_string(r.variance_status)) : "invalid") << '\n';
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "dataset,metric,mode,design,param,ground_truth,mean,bias,stddev,std_error,valid,invalid\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << to_string(r.kind) << ',' << to_string(r.mode) << ",\"" << r.design
        << "\"," << format_double(r.param) << ',' << format_double(r.ground_truth) << ','
        << format_double(r.mean) << ',' << format_double(r.bias) << ',' << format_double(r.stddev)
        << ',' << format_double(r.std_error) << ',' << r.valid << ',' << r.invalid << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const RunRecord& record) {
  out << "dataset,metric,mode,param,bin,lower,upper,count\n";
  for (const auto& s : record.sweeps) {
    for (const auto& m : s.metrics) {
      const auto& h = m.summary.histogram;
      for (std::size_t b = 0; b < h.counts.size(); ++b) {
        out << record.dataset << ',' << to_string(m.metric.kind) << ',' << to_string(m.metric.mode)
            << ',' << format_double(s.value) << ',' << b << ',' << format_double(h.edges[b]) << ','
            << format_double(h.edges[b + 1]) << ',' << h.counts[b] << '\n';
      }
    }
  }
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergencePoint> series) {
  out << "n,mean,deviation\n";
  for (const auto& p : series) {
    out << p.n << ',' << format_double(p.mean) << ',' << format_double(p.deviation) << '\n';
  }
}

}  // namespace homest
