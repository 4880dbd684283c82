#include "homest/cli.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "homest/error.hpp"
#include "homest/estimator.hpp"
#include "homest/format.hpp"
#include "homest/graph.hpp"
#include "homest/graphon.hpp"
#include "homest/harness.hpp"
#include "homest/inclusion.hpp"
#include "homest/metrics.hpp"
#include "homest/sampling.hpp"
#include "homest/serialize.hpp"

namespace homest {

namespace {

struct DataOptions {
  std::string manifest;
  std::string edges;
  std::string labels;
  std::size_t classes = 0;
  std::string name;
  bool remap = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--manifest", manifest, "Dataset manifest JSON {name, edge_file, label_file, class_count}");
    cmd->add_option("--edges", edges, "Edge list file (\"i j [w]\" per line, '#' comments)");
    cmd->add_option("--labels", labels, "Label file (\"node_id class_id\" per line)");
    cmd->add_option("--classes", classes, "Number of classes in the label file");
    cmd->add_option("--name", name, "Dataset name used in outputs");
    cmd->add_flag("--remap-ids", remap, "Intern sparse external node ids");
  }

  Dataset load(bool labels_required = true) const {
    if (!manifest.empty()) {
      if (!edges.empty() || !labels.empty()) throw Error("--manifest cannot be combined with --edges/--labels");
      return load_dataset(load_manifest(manifest));
    }
    if (edges.empty()) throw Error("either --manifest or --edges is required");
    if (!labels.empty()) {
      if (classes == 0) throw Error("--labels requires --classes");
      DatasetManifest m{name.empty() ? std::filesystem::path(edges).stem().string() : name, edges, labels,
                        classes, remap};
      return load_dataset(m);
    }
    if (labels_required) throw Error("this command needs node labels (--labels and --classes)");
    std::ifstream in(edges);
    if (!in) throw Error("cannot open edge file " + edges);
    Dataset d;
    d.name = name.empty() ? std::filesystem::path(edges).stem().string() : name;
    NodeIdMap ids;
    d.graph = remap ? load_edge_list_remapped(in, ids) : load_edge_list(in);
    return d;
  }
};

struct DesignOptions {
  std::string design;
  double p = 0.0;
  double frac = 0.0;
  std::size_t n_star = 0;
  std::size_t sources = 0;
  std::size_t targets = 0;

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--design", design, "Sampling design")
                    ->check(CLI::IsMember({"bernoulli", "srs", "traceroute"}));
    if (required) opt->required();
    cmd->add_option("--p", p, "Bernoulli node retention probability");
    cmd->add_option("--frac", frac, "SRS node fraction (n* = round(frac * n))");
    cmd->add_option("--n-star", n_star, "SRS sample size");
    cmd->add_option("--sources", sources, "Traceroute source count");
    cmd->add_option("--targets", targets, "Traceroute target count");
  }

  SampleDesign build(std::size_t n, std::uint64_t seed) const {
    if (design == "bernoulli") {
      if (p <= 0.0) throw Error("--design bernoulli requires --p");
      return SampleDesign::bernoulli(p, seed);
    }
    if (design == "srs") {
      if (n_star > 0) return SampleDesign::srs(n_star, seed);
      if (frac <= 0.0) throw Error("--design srs requires --frac or --n-star");
      return SampleDesign::srs_fraction(frac, n, seed);
    }
    if (sources == 0 || targets == 0) throw Error("--design traceroute requires --sources and --targets");
    return SampleDesign::traceroute(sources, targets, seed);
  }
};

struct InclusionOptions {
  std::string source = "auto";
  std::size_t reps = 100000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pi", source, "Inclusion probabilities: auto, analytic, approximate, empirical")->capture_default_str()
        ->check(CLI::IsMember({"auto", "analytic", "approximate", "empirical"}));
    cmd->add_option("--pi-reps", reps, "Replications of the empirical inclusion oracle")->capture_default_str();
  }

  InclusionSource resolve(const SampleDesign& d) const {
    if (source == "analytic") return InclusionSource::analytic;
    if (source == "approximate") return InclusionSource::approximate;
    if (source == "empirical") return InclusionSource::empirical;
    return d.is_induced() ? InclusionSource::analytic : InclusionSource::approximate;
  }

  InclusionModel build(const Graph& g, const SampleDesign& d, std::size_t threads) const {
    switch (resolve(d)) {
      case InclusionSource::analytic: return analytic_pi(d, g);
      case InclusionSource::approximate: {
        const auto* t = std::get_if<TracerouteDesign>(&d.variant);
        if (!t) throw Error("--pi approximate applies to traceroute only");
        return approx_pi_traceroute(edge_betweenness(g, threads), t->n_sources, t->n_targets, g.node_count());
      }
      case InclusionSource::empirical:
        return empirical_pi(g, d.with_seed(split_seed(d.seed ^ ExperimentConfig::kOracleStream, 0)), reps,
                            threads);
    }
    throw Error("unknown inclusion source");
  }
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::string fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cmd_info(const DataOptions& data, const std::string& out_path, std::ostream& out) {
  const auto d = data.load(false);
  const auto& g = d.graph;
  std::size_t isolated = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) isolated += g.degree(v) == 0;
  nlohmann::json j = {{"name", d.name},
                      {"nodes", g.node_count()},
                      {"edges", g.edge_count()},
                      {"total_edge_weight", total_edge_weight(g)},
                      {"isolated_nodes", isolated}};
  out << "dataset            " << d.name << '\n'
      << "nodes              " << g.node_count() << '\n'
      << "edges              " << g.edge_count() << '\n'
      << "total edge weight  " << format_double(total_edge_weight(g)) << '\n'
      << "isolated nodes     " << isolated << '\n';
  if (d.signal.has_labels()) {
    std::vector<std::size_t> counts(d.signal.dimension(), 0);
    for (auto c : d.signal.labels()) ++counts[c];
    j["class_counts"] = counts;
    out << "classes            " << counts.size() << '\n';
    for (std::size_t c = 0; c < counts.size(); ++c) out << "  class " << c << "          " << counts[c] << '\n';
  }
  if (!out_path.empty()) emit(out_path, j.dump(2) + "\n", out);
}

void cmd_homophily(const DataOptions& data, const std::string& out_path, std::ostream& out) {
  const auto d = data.load();
  nlohmann::json j = {{"name", d.name}, {"nodes", d.graph.node_count()}, {"edges", d.graph.edge_count()}};
  out << "dataset " << d.name << " (" << d.graph.node_count() << " nodes, " << d.graph.edge_count()
      << " edges)\n";
  const std::pair<MetricKind, const char*> rows[] = {
      {MetricKind::dirichlet_total, "dirichlet_total     "},
      {MetricKind::dirichlet_normalized, "dirichlet_normalized"},
      {MetricKind::edge_homophily, "edge_homophily      "},
      {MetricKind::node_homophily, "node_homophily      "}};
  for (const auto& [kind, label] : rows) {
    const double v = exact_metric(d.graph, d.signal, kind);
    j[std::string(to_string(kind))] = v;
    out << label << "  " << (kind == MetricKind::dirichlet_total ? format_double(v) : fixed(v)) << '\n';
  }
  if (!out_path.empty()) emit(out_path, j.dump(2) + "\n", out);
}

int dispatch(CLI::App& app, int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::uint64_t seed = kDefaultSeed;
  std::size_t threads = 0;
  std::string out_path;

  DataOptions info_data;
  auto* info = app.add_subcommand("info", "Dataset statistics: nodes, edges, class counts");
  info_data.attach(info);
  info->add_option("--out", out_path, "Also write the statistics as JSON");

  DataOptions hom_data;
  auto* hom = app.add_subcommand("homophily", "Exact homophily metrics of the full graph");
  hom_data.attach(hom);
  hom->add_option("--out", out_path, "Also write the metrics as JSON");

  DataOptions sample_data;
  DesignOptions sample_design;
  InclusionOptions sample_incl;
  auto* sample = app.add_subcommand("sample", "Draw one sampled graph and print it as JSON");
  sample_data.attach(sample);
  sample_design.attach(sample, true);
  sample_incl.attach(sample);
  sample->add_option("--seed", seed, "Random seed")->capture_default_str();
  sample->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  sample->add_option("--out", out_path, "Output file (default: stdout)");

  DataOptions est_data;
  DesignOptions est_design;
  InclusionOptions est_incl;
  std::string metric = "dirichlet";
  std::string mode;
  std::string csv_path;
  bool no_variance = false;
  auto* est = app.add_subcommand("estimate", "Estimate one metric from one sample; prints a report as JSON");
  est_data.attach(est);
  est_design.attach(est, true);
  est_incl.attach(est);
  est->add_option("--metric", metric,
                  "dirichlet (normalized), dirichlet_total, edge_homophily, node_homophily")->capture_default_str();
  est->add_option("--mode", mode, "ht_total, plug_in, hajek_ratio, known_denominator (default per metric)");
  est->add_option("--seed", seed, "Random seed")->capture_default_str();
  est->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  est->add_option("--out", out_path, "Output file (default: stdout)");
  est->add_option("--csv", csv_path, "Append a batch row to this CSV file");
  est->add_flag("--no-variance", no_variance, "Skip the variance estimate");

  DataOptions exp_data;
  DesignOptions exp_design;
  std::string preset;
  std::string config_path;
  std::vector<double> sweep;
  std::vector<std::string> exp_metrics;
  std::string exp_mode;
  std::size_t reps = 0;
  std::string exp_pi;
  std::size_t pi_reps = 0;
  std::size_t bins = 0;
  std::string summary_csv;
  std::string hist_csv;
  auto* exp = app.add_subcommand("experiment", "Monte Carlo replications; writes a run record and CSV summaries");
  exp_data.attach(exp);
  exp_design.attach(exp, false);
  exp->add_option("--preset", preset, "dispersion (BS p sweep), metrics (SRS 30%), traceroute")
      ->check(CLI::IsMember({"dispersion", "metrics", "traceroute"}));
  exp->add_option("--config", config_path, "Experiment config JSON");
  exp->add_option("--sweep", sweep, "Sweep values (p, node fraction, or probe rate)")->delimiter(',');
  exp->add_option("--metric", exp_metrics, "Metric(s) to estimate")->delimiter(',');
  exp->add_option("--mode", exp_mode, "Estimator mode for every --metric");
  exp->add_option("--reps", reps, "Replications T (default 200)");
  exp->add_option("--pi", exp_pi, "Inclusion source: analytic, approximate, empirical")
      ->check(CLI::IsMember({"analytic", "approximate", "empirical"}));
  exp->add_option("--pi-reps", pi_reps, "Replications of the empirical inclusion oracle");
  exp->add_option("--bins", bins, "Histogram bins");
  exp->add_option("--seed", seed, "Base seed")->capture_default_str();
  exp->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  exp->add_option("--out", out_path, "Run record JSON (default: stdout)");
  exp->add_option("--summary-csv", summary_csv, "Summary CSV");
  exp->add_option("--hist-csv", hist_csv, "Histogram CSV");

  DataOptions gr_data;
  bool check_identity = false;
  bool convergence = false;
  std::vector<std::size_t> sizes{50, 100, 200, 400};
  std::size_t gr_reps = 20;
  double p_in = 0.5;
  double p_out = 0.2;
  std::size_t resolution = 2;
  std::string graphon_path;
  std::string signal_rule = "block";
  std::string export_path;
  auto* gr = app.add_subcommand("graphon", "Step-graphon identity check or W-random convergence series");
  gr_data.attach(gr);
  gr->add_flag("--check-identity", check_identity, "Check phi_step * n^2 == Dirichlet energy on a dataset");
  gr->add_flag("--convergence", convergence, "Convergence of TV/n^2 on W-random graphs (CSV n,mean,deviation)");
  gr->add_option("--sizes", sizes, "Graph sizes")->capture_default_str()->delimiter(',');
  gr->add_option("--reps", gr_reps, "Replications per size")->capture_default_str();
  gr->add_option("--p-in", p_in, "Two-block SBM within-block probability")->capture_default_str();
  gr->add_option("--p-out", p_out, "Two-block SBM across-block probability")->capture_default_str();
  gr->add_option("--resolution", resolution, "Grid resolution of the SBM graphon (even)")->capture_default_str();
  gr->add_option("--graphon", graphon_path, "Grid graphon JSON {resolution, values} instead of the SBM");
  gr->add_option("--signal", signal_rule, "Signal rule: block (two-block indicator) or constant")->capture_default_str()
      ->check(CLI::IsMember({"block", "constant"}));
  gr->add_option("--export-graphon", export_path, "Write the graphon used as JSON");
  gr->add_option("--seed", seed, "Random seed")->capture_default_str();
  gr->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  gr->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (info->parsed()) {
      cmd_info(info_data, out_path, out);
    } else if (hom->parsed()) {
      cmd_homophily(hom_data, out_path, out);
    } else if (sample->parsed()) {
      const auto d = sample_data.load(false);
      const auto design = sample_design.build(d.graph.node_count(), seed);
      auto s = draw_sample(d.graph, design);
      attach_inclusion(s, sample_incl.build(d.graph, design, threads));
      emit(out_path, to_json(s), out);
    } else if (est->parsed()) {
      const auto d = est_data.load();
      const auto kind = parse_metric_kind(metric);
      if (!kind) throw Error("unknown metric '" + metric + "'");
      EstimatorMode m = default_mode(*kind);
      if (!mode.empty()) {
        auto parsed = parse_estimator_mode(mode);
        if (!parsed) throw Error("unknown mode '" + mode + "'");
        m = *parsed;
      }
      const auto design = est_design.build(d.graph.node_count(), seed);
      auto s = draw_sample(d.graph, design, false);
      const auto incl = est_incl.build(d.graph, design, threads);
      EstimateOptions options;
      options.compute_variance = !no_variance;
      const auto report = estimate_metric(&d.graph, d.signal, s, *kind, m, incl, options);
      emit(out_path, to_json(report), out);
      if (!csv_path.empty()) {
        const bool fresh = !std::filesystem::exists(csv_path) || std::filesystem::file_size(csv_path) == 0;
        std::ofstream csv(csv_path, std::ios::app | std::ios::binary);
        if (!csv) throw Error("cannot write " + csv_path);
        if (fresh) write_estimate_csv_header(csv);
        write_estimate_csv_row(csv, d.name, report);
      }
    } else if (exp->parsed()) {
      ExperimentConfig cfg;
      if (!config_path.empty()) {
        cfg = experiment_config_from_json(read_file(config_path));
      } else if (preset == "dispersion") {
        cfg = test_case_dispersion();
      } else if (preset == "metrics") {
        cfg = test_case_metrics();
      } else if (preset == "traceroute") {
        cfg = test_case_traceroute();
      } else if (exp_design.design.empty()) {
        throw Error("experiment needs --preset, --config or --design");
      }
      if (!exp_design.design.empty()) {
        cfg.design = *parse_design_kind(exp_design.design);
        if (cfg.design == DesignKind::traceroute && cfg.inclusion == InclusionSource::analytic) {
          cfg.inclusion = InclusionSource::approximate;
        } else if (cfg.design != DesignKind::traceroute) {
          cfg.inclusion = InclusionSource::analytic;
        }
        if (exp_design.p > 0.0) cfg.sweep = {exp_design.p};
        if (exp_design.frac > 0.0) cfg.sweep = {exp_design.frac};
      }
      if (!sweep.empty()) cfg.sweep = sweep;
      if (!exp_metrics.empty()) {
        cfg.metrics.clear();
        for (const auto& name : exp_metrics) {
          auto kind = parse_metric_kind(name);
          if (!kind) throw Error("unknown metric '" + name + "'");
          MetricRequest req{*kind, default_mode(*kind)};
          if (!exp_mode.empty()) {
            auto parsed = parse_estimator_mode(exp_mode);
            if (!parsed) throw Error("unknown mode '" + exp_mode + "'");
            req.mode = *parsed;
          }
          cfg.metrics.push_back(req);
        }
      }
      if (cfg.metrics.empty()) cfg.metrics = {{MetricKind::dirichlet_total, EstimatorMode::ht_total}};
      if (reps > 0) cfg.replications = reps;
      if (!exp_pi.empty()) {
        cfg.inclusion = exp_pi == "analytic"      ? InclusionSource::analytic
                        : exp_pi == "approximate" ? InclusionSource::approximate
                                                  : InclusionSource::empirical;
      }
      if (pi_reps > 0) cfg.oracle_replications = pi_reps;
      if (bins > 0) cfg.histogram_bins = bins;
      if (exp->count("--seed") > 0 || config_path.empty()) cfg.base_seed = seed;
      cfg.threads = threads;

      const auto d = exp_data.load();
      const auto record = run_experiment(cfg, d);
      const auto rows = summarize(std::span(&record, 1));
      emit(out_path, to_json(record), out);
      if (!summary_csv.empty()) {
        std::ostringstream csv;
        write_summary_csv(csv, rows);
        emit(summary_csv, csv.str(), out);
      }
      if (!hist_csv.empty()) {
        std::ostringstream csv;
        write_histogram_csv(csv, record);
        emit(hist_csv, csv.str(), out);
      }
      if (!out_path.empty() && out_path != "-") {
        out << "metric                mode               param   GT          mean        bias        sd          invalid\n";
        for (const auto& r : rows) {
          char line[256];
          std::snprintf(line, sizeof line, "%-21s %-18s %-7s %-11.6g %-11.6g %-11.4g %-11.4g %zu\n",
                        std::string(to_string(r.kind)).c_str(), std::string(to_string(r.mode)).c_str(),
                        format_double(r.param).c_str(), r.ground_truth, r.mean, r.bias, r.stddev, r.invalid);
          out << line;
        }
      }
    } else if (gr->parsed()) {
      if (check_identity == convergence) throw Error("graphon needs exactly one of --check-identity, --convergence");
      if (check_identity) {
        const auto d = gr_data.load();
        const auto [w, x] = to_step_pair(d.graph, d.signal);
        const double n = static_cast<double>(d.graph.node_count());
        const double tv = dirichlet_energy(d.graph, d.signal);
        const double phi = phi_step(w, x);
        const double residual = step_identity_residual(d.graph, d.signal);
        nlohmann::json j = {{"dataset", d.name},      {"nodes", d.graph.node_count()},
                            {"phi_step", phi},        {"phi_step_times_n2", phi * n * n},
                            {"dirichlet_energy", tv}, {"relative_residual", residual},
                            {"holds", residual < 1e-9}};
        emit(out_path, j.dump(2) + "\n", out);
        if (!out_path.empty() && out_path != "-") {
          out << "phi_step * n^2 = " << format_double(phi * n * n) << ", dirichlet energy = "
              << format_double(tv) << ", relative residual = " << format_double(residual) << '\n';
        }
        return residual < 1e-9 ? 0 : 1;
      }
      GridGraphon w = graphon_path.empty() ? GridGraphon::two_block_sbm(resolution, p_in, p_out)
                                           : grid_graphon_from_json(read_file(graphon_path));
      if (!export_path.empty()) emit(export_path, to_json(w), out);
      const SignalRule rule = signal_rule == "block" ? two_block_indicator() : constant_signal();
      const double phi = dirichlet_functional(w, rule, std::max<std::size_t>(w.resolution, 1) * 64);
      const auto series = convergence_experiment(w, rule, phi, sizes, gr_reps, seed, threads);
      std::ostringstream csv;
      write_convergence_csv(csv, series);
      emit(out_path, csv.str(), out);
      if (!out_path.empty() && out_path != "-") out << "Phi = " << format_double(phi) << '\n';
    }
  } catch (const std::exception& ex) {
    err << "homest: error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homophily estimation from sampled graphs", "homest"};
  app.require_subcommand(1);
  return dispatch(app, argc, argv, out, err);
}

}  // namespace homest
