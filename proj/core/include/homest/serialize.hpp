#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "homest/estimator.hpp"
#include "homest/graph.hpp"
#include "homest/graphon.hpp"
#include "homest/harness.hpp"
#include "homest/inclusion.hpp"
#include "homest/sampling.hpp"

namespace homest {

// JSON and CSV writers for every artifact the CLI emits. JSON text is
// pretty-printed with two-space indentation and a trailing newline; output
// depends only on the values, never on thread count or timing.

/// {"design", "seed", "nodes", "edges": [{i, j, w, pi}], "paths"?, ...}
std::string to_json(const SampledGraph& sample);
/// {"source", "design"?, "replications"?, "edges": [{i, j, pi, sampleable}]}
std::string to_json(const Graph& g, const InclusionModel& model);
std::string to_json(const EstimateReport& report);
std::string to_json(const RunRecord& record);
std::string to_json(const GridGraphon& w);
std::string to_json(const ExperimentConfig& config);

GridGraphon grid_graphon_from_json(std::string_view text);
/// Missing fields keep ExperimentConfig defaults. Throws ParseError.
ExperimentConfig experiment_config_from_json(std::string_view text);

/// Batch estimate rows: dataset,kind,design,param,seed,point,variance,status
void write_estimate_csv_header(std::ostream& out);
void write_estimate_csv_row(std::ostream& out, std::string_view dataset, const EstimateReport& report);

/// dataset,metric,mode,design,param,ground_truth,mean,bias,stddev,std_error,valid,invalid
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);
/// dataset,metric,mode,param,bin,lower,upper,count
void write_histogram_csv(std::ostream& out, const RunRecord& record);
/// n,mean,deviation
void write_convergence_csv(std::ostream& out, std::span<const ConvergencePoint> series);

}  // namespace homest
