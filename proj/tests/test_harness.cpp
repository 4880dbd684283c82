#include <random>
#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "homest/error.hpp"
#include "homest/harness.hpp"
#include "homest/serialize.hpp"
#include "support/fixtures.hpp"

namespace homest {
namespace {

EstimateReport point(double x, bool valid = true) {
  EstimateReport r;
  r.point = valid ? x : 0.0;
  r.valid = valid;
  return r;
}

TEST(Histogram, EqualWidthBinsWithClosedLastBin) {
  const std::vector<double> x{0.0, 0.1, 0.5, 0.99, 1.0};
  const auto h = histogram(x, 4);
  EXPECT_EQ(h.edges, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 0, 1, 2}));
}

TEST(Histogram, DegenerateRangeUsesOneBin) {
  const std::vector<double> x{3.0, 3.0, 3.0};
  const auto h = histogram(x, 10);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{3}));
  EXPECT_THROW(histogram(std::vector<double>{}, 3), Error);
}

TEST(Histogram, CountsSumToSampleSize) {
  std::mt19937_64 gen(71);
  std::normal_distribution<double> f(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(1 + gen() % 300);
    for (auto& v : x) v = f(gen);
    const auto h = histogram(x, 1 + gen() % 30);
    std::size_t total = 0;
    for (auto c : h.counts) total += c;
    EXPECT_EQ(total, x.size());
    EXPECT_EQ(h.edges.size(), h.counts.size() + 1);
  }
}

TEST(Summary, StatisticsOfValidPoints) {
  const std::vector<EstimateReport> reps{point(1), point(2), point(3), point(0, false)};
  const auto s = summarize_reports(reps, 1.5, 5);
  EXPECT_EQ(s.valid, 3u);
  EXPECT_EQ(s.invalid, 1u);
  EXPECT_EQ(s.mean, 2.0);
  EXPECT_EQ(s.bias, 0.5);
  EXPECT_EQ(s.stddev, 1.0);
  EXPECT_NEAR(s.std_error, 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(Summary, IdenticalPointsHaveZeroSpread) {
  const std::vector<EstimateReport> reps(7, point(4.25));
  const auto s = summarize_reports(reps, 4.25, 20);
  EXPECT_EQ(s.stddev, 0.0);
  EXPECT_EQ(s.bias, 0.0);
  EXPECT_EQ(s.histogram.counts.size(), 1u);
}

TEST(Summary, AllInvalidThrows) {
  const std::vector<EstimateReport> reps(3, point(0, false));
  EXPECT_THROW(summarize_reports(reps, 0.0, 5), Error);
}

TEST(Config, ValidationCatchesBadSetups) {
  auto c = test_case_metrics();
  EXPECT_NO_THROW(c.validate());
  c.replications = 0;
  EXPECT_THROW(c.validate(), DesignError);
  c = test_case_metrics();
  c.sweep = {1.5};
  EXPECT_THROW(c.validate(), DesignError);
  c = test_case_metrics();
  c.metrics = {{MetricKind::node_homophily, EstimatorMode::ht_total}};
  EXPECT_THROW(c.validate(), DesignError);
  c = test_case_traceroute();
  c.inclusion = InclusionSource::analytic;
  EXPECT_THROW(c.validate(), DesignError);
  c = test_case_dispersion();
  c.inclusion = InclusionSource::approximate;
  EXPECT_THROW(c.validate(), DesignError);
}

TEST(Config, PresetsMatchTheirDescriptions) {
  EXPECT_EQ(test_case_dispersion().sweep, (std::vector<double>{0.1, 0.3, 0.5}));
  EXPECT_EQ(test_case_dispersion().replications, 200u);
  EXPECT_EQ(test_case_metrics().design, DesignKind::srs);
  EXPECT_EQ(test_case_traceroute().inclusion, InclusionSource::empirical);
  const auto d = design_for(DesignKind::traceroute, 0.1, 34);
  EXPECT_EQ(std::get<TracerouteDesign>(d.variant).n_sources, 3u);
  EXPECT_EQ(std::get<SrsDesign>(design_for(DesignKind::srs, 0.3, 34).variant).n_star, 10u);
}

TEST(Config, JsonRoundTrip) {
  for (auto c : {test_case_dispersion(), test_case_metrics(), test_case_traceroute()}) {
    c.base_seed = 123456789012345ULL;
    const auto text = to_json(c);
    EXPECT_EQ(to_json(experiment_config_from_json(text)), text);
  }
  EXPECT_THROW(experiment_config_from_json("{\"design\": \"magic\"}"), ParseError);
  EXPECT_THROW(experiment_config_from_json("not json"), ParseError);
}

TEST(GridGraphonJson, RoundTrip) {
  const auto w = GridGraphon::two_block_sbm(4, 0.5, 0.125);
  const auto back = grid_graphon_from_json(to_json(w));
  EXPECT_EQ(back.resolution, 4u);
  EXPECT_EQ(back.values, w.values);
}

TEST(Experiment, HtMeanIsWithinMonteCarloError) {
  const auto d = testing::karate();
  auto c = test_case_dispersion();
  c.threads = 1;
  const auto rec = run_experiment(c, d);
  ASSERT_EQ(rec.sweeps.size(), 3u);
  for (const auto& sweep : rec.sweeps) {
    const auto& ht = sweep.metrics[0];
    EXPECT_EQ(ht.ground_truth, 50.0);
    EXPECT_EQ(ht.summary.valid, 200u);
    EXPECT_LE(std::abs(ht.summary.bias), 4.0 * ht.summary.stddev / std::sqrt(200.0));
  }
  // Spread falls as more of the graph is retained.
  EXPECT_GT(rec.sweeps[0].metrics[0].summary.stddev, rec.sweeps[1].metrics[0].summary.stddev);
  EXPECT_GT(rec.sweeps[1].metrics[0].summary.stddev, rec.sweeps[2].metrics[0].summary.stddev);
}

TEST(Experiment, ReplicationsUseDocumentedSeeds) {
  const auto d = testing::karate();
  ExperimentConfig c;
  c.design = DesignKind::bernoulli;
  c.sweep = {0.2, 0.4};
  c.metrics = {{MetricKind::dirichlet_total, EstimatorMode::plug_in}};
  c.replications = 5;
  c.base_seed = 99;
  c.threads = 1;
  const auto rec = run_experiment(c, d);
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t r = 0; r < 5; ++r) {
      const auto design = SampleDesign::bernoulli(c.sweep[k], split_seed(split_seed(99, k), r));
      const auto sample = draw_sample(d.graph, design);
      const auto want = estimate_metric(&d.graph, d.signal, sample, MetricKind::dirichlet_total,
                                        EstimatorMode::plug_in, analytic_pi(design, d.graph));
      EXPECT_EQ(rec.sweeps[k].metrics[0].reports[r].point, want.point);
      EXPECT_EQ(rec.sweeps[k].metrics[0].reports[r].design->seed, design.seed);
    }
  }
}

TEST(Experiment, OutputIsIdenticalAcrossThreadCounts) {
  const auto d = testing::karate();
  auto c = test_case_traceroute();
  c.replications = 30;
  c.oracle_replications = 2000;
  c.threads = 1;
  const auto one = to_json(run_experiment(c, d));
  c.threads = 4;
  auto rec = run_experiment(c, d);
  rec.config.threads = 1;
  EXPECT_EQ(to_json(rec), one);
}

TEST(Experiment, InvalidReplicationsAreCountedNotAveraged) {
  // Two isolated edges, Bernoulli p = 0.2: most samples observe no edge.
  const Dataset d{"pairs", Graph::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}}),
                  GraphSignal::from_labels({0, 1, 0, 0}, 2)};
  ExperimentConfig c;
  c.design = DesignKind::bernoulli;
  c.sweep = {0.2};
  c.metrics = {{MetricKind::edge_homophily, EstimatorMode::hajek_ratio},
               {MetricKind::dirichlet_total, EstimatorMode::ht_total}};
  c.replications = 100;
  c.threads = 1;
  const auto rec = run_experiment(c, d);
  const auto& hajek = rec.sweeps[0].metrics[0].summary;
  EXPECT_GT(hajek.invalid, 50u);
  EXPECT_EQ(hajek.valid + hajek.invalid, 100u);
  // An empty sample is a valid HT total of zero.
  EXPECT_EQ(rec.sweeps[0].metrics[1].summary.invalid, 0u);
}

TEST(Experiment, SummaryRowsAndCsv) {
  const auto d = testing::karate();
  auto c = test_case_metrics();
  c.replications = 20;
  const std::vector<RunRecord> recs{run_experiment(c, d)};
  const auto rows = summarize(recs);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].design, "srs:n_star=10");
  std::ostringstream csv;
  write_summary_csv(csv, rows);
  std::string header;
  std::getline(std::istringstream(csv.str()) >> std::ws, header);
  EXPECT_EQ(header, "dataset,metric,mode,design,param,ground_truth,mean,bias,stddev,std_error,valid,invalid");
  std::ostringstream hist;
  write_histogram_csv(hist, recs[0]);
  EXPECT_NE(hist.str().find("karate,node_homophily,plug_in"), std::string::npos);
}

}  // namespace
}  // namespace homest
