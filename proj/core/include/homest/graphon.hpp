#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "homest/graph.hpp"
#include "homest/rng.hpp"

namespace homest {

// Summation convention. The Dirichlet energy sums each unordered edge once,
// while the double integral of W(u,v) ||X(u) - X(v)||^2 over [0,1]^2 visits
// every block pair in both orders. All graphon functionals below carry a
// factor 1/2 so that, for a step pair built from (G, X),
//   phi_step(W_G, X_G) * n^2 == dirichlet_energy(G, X)
// holds exactly. The same convention applies to dirichlet_functional on
// grid graphons, so finite-graph and limit values are directly comparable.

struct BlockEntry {
  NodeId row;
  NodeId col;
  double value;
};

/// Step graphon of a graph on n blocks I_i = [i/n, (i+1)/n): W(u, v) = A_ij
/// for u in I_i, v in I_j. Stored sparsely; both (i, j) and (j, i) entries are
/// present and entries are sorted by (row, col).
struct StepGraphon {
  std::size_t blocks = 0;
  std::vector<BlockEntry> entries;

  double block(NodeId i, NodeId j) const;
  double at(double u, double v) const;
  std::vector<double> dense() const;
};

/// Step signal: X(u) = x_i for u in I_i.
struct StepSignal {
  std::size_t blocks = 0;
  std::size_t dimension = 0;
  std::vector<double> rows;

  std::span<const double> row(std::size_t i) const { return {rows.data() + i * dimension, dimension}; }
  std::span<const double> at(double u) const;
};

/// Index of the interval of [0, 1) partitioned into `parts` that contains u.
std::size_t interval_index(double u, std::size_t parts);

std::pair<StepGraphon, StepSignal> to_step_pair(const Graph& g, const GraphSignal& s);

/// (1 / (2 n^2)) * sum over ordered block pairs of W_ij ||x_i - x_j||^2.
double phi_step(const StepGraphon& w, const StepSignal& x);

/// |phi_step * n^2 - TV| / TV (absolute residual when TV == 0).
double step_identity_residual(const Graph& g, const GraphSignal& s);

/// Symmetric graphon sampled on an m x m grid with entries in [0, 1];
/// W(u, v) is the value of the cell containing (u, v).
struct GridGraphon {
  std::size_t resolution = 0;
  std::vector<double> values;

  double cell(std::size_t a, std::size_t b) const { return values[a * resolution + b]; }
  double at(double u, double v) const;
  /// Throws homest::Error if not square, not symmetric, or outside [0, 1].
  void validate() const;

  static GridGraphon constant(std::size_t resolution, double value);
  /// Two equal blocks [0, 1/2) and [1/2, 1); resolution must be even.
  static GridGraphon two_block_sbm(std::size_t resolution, double p_in, double p_out);
  static GridGraphon from_function(std::size_t resolution, const std::function<double(double, double)>& fn);
};

using SignalRule = std::function<std::vector<double>(double)>;

/// Block-indicator one-hot rule for two_block_sbm: (1, 0) on [0, 1/2), (0, 1) after.
SignalRule two_block_indicator();
SignalRule constant_signal(std::size_t dimension = 1);

/// Midpoint quadrature of (1/2) * integral W(u,v) ||X(u) - X(v)||^2 du dv with
/// `points` nodes per axis. Exact for step functions aligned with the grid.
double dirichlet_functional(const GridGraphon& w, const SignalRule& rule, std::size_t points);

struct WRandomGraph {
  Graph graph;
  std::vector<double> latent;
};

/// u_i ~ U[0, 1) i.i.d.; each pair i < j is an edge with probability W(u_i, u_j).
WRandomGraph sample_w_random_graph(const GridGraphon& w, std::size_t n, CounterRng& rng);

struct ConvergencePoint {
  std::size_t n = 0;
  /// Mean of TV / n^2 over replications.
  double mean = 0.0;
  /// Mean over replications of |TV / n^2 - Phi|.
  double deviation = 0.0;
};

/// For each size, `reps` W-random graphs with signal x_i = rule(u_i).
/// Replication r at size index k uses seed split_seed(split_seed(seed, k), r).
std::vector<ConvergencePoint> convergence_experiment(const GridGraphon& w, const SignalRule& rule,
                                                     double phi, std::span<const std::size_t> sizes,
                                                     std::size_t reps, std::uint64_t seed,
                                                     std::size_t threads = 1);

}  // namespace homest
