#include <random>

#include "benchmark/benchmark.h"
#include "homest/estimator.hpp"
#include "homest/inclusion.hpp"
#include "homest/sampling.hpp"

namespace {

using namespace homest;

Graph er_graph(std::size_t n, double degree, std::uint64_t seed) {
  CounterRng rng(seed);
  const double p = degree / static_cast<double>(n);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.push_back({i, j, 1.0});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

GraphSignal labels(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<std::uint32_t> out(n);
  for (auto& l : out) l = static_cast<std::uint32_t>(rng.below(3));
  return GraphSignal::from_labels(std::move(out), 3);
}

void BM_EdgeBetweenness(benchmark::State& state) {
  const auto g = er_graph(static_cast<std::size_t>(state.range(0)), 8.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(edge_betweenness(g, 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EdgeBetweenness)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

void BM_SrsSample(benchmark::State& state) {
  const auto g = er_graph(static_cast<std::size_t>(state.range(0)), 10.0, 2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_sample(g, SampleDesign::srs_fraction(0.3, g.node_count(), ++seed)));
  }
}
BENCHMARK(BM_SrsSample)->Range(1 << 10, 1 << 14);

void BM_TracerouteSample(benchmark::State& state) {
  const auto g = er_graph(2000, 8.0, 3);
  const auto k = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw_sample(g, SampleDesign::traceroute(k, k, ++seed), false));
}
BENCHMARK(BM_TracerouteSample)->Arg(4)->Arg(16)->Arg(64);

// Variance of one SRS sample: grouped path vs the pairwise double sum.
template <bool kPairwise>
void BM_HtVariance(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto g = er_graph(n, 10.0, 4);
  const auto s = labels(n, 5);
  const auto design = SampleDesign::srs_fraction(0.3, n, 6);
  const auto incl = analytic_pi(design, g);
  const auto sample = draw_sample(g, design);
  const auto values = sample_values(s, sample, EdgeQuantity::variation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kPairwise ? ht_variance_pairwise(sample, values, incl)
                                       : ht_variance(sample, values, incl));
  }
  state.counters["sampled_edges"] = static_cast<double>(sample.edges.size());
}
BENCHMARK(BM_HtVariance<false>)->Name("BM_HtVariance/grouped")->Range(1 << 10, 1 << 14);
BENCHMARK(BM_HtVariance<true>)->Name("BM_HtVariance/pairwise")->Range(1 << 10, 1 << 13);

void BM_EmpiricalPi(benchmark::State& state) {
  const auto g = er_graph(500, 6.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_pi(g, SampleDesign::traceroute(5, 5, 8), 1000, 1));
  }
}
BENCHMARK(BM_EmpiricalPi)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
