#include "homest/graphon.hpp"

#include <algorithm>
#include <cmath>

#include "homest/error.hpp"
#include "homest/metrics.hpp"
#include "homest/parallel.hpp"

namespace homest {

std::size_t interval_index(double u, std::size_t parts) {
  if (!(u >= 0.0) || u > 1.0) throw Error("position outside [0, 1]");
  return std::min(static_cast<std::size_t>(u * static_cast<double>(parts)), parts - 1);
}

double StepGraphon::block(NodeId i, NodeId j) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{i, j},
                             [](const BlockEntry& e, const std::pair<NodeId, NodeId>& key) {
                               return e.row != key.first ? e.row < key.first : e.col < key.second;
                             });
  if (it == entries.end() || it->row != i || it->col != j) return 0.0;
  return it->value;
}

double StepGraphon::at(double u, double v) const {
  return block(static_cast<NodeId>(interval_index(u, blocks)),
               static_cast<NodeId>(interval_index(v, blocks)));
}

std::vector<double> StepGraphon::dense() const {
  std::vector<double> out(blocks * blocks, 0.0);
  for (const auto& e : entries) out[static_cast<std::size_t>(e.row) * blocks + e.col] = e.value;
  return out;
}

std::span<const double> StepSignal::at(double u) const { return row(interval_index(u, blocks)); }

std::pair<StepGraphon, StepSignal> to_step_pair(const Graph& g, const GraphSignal& s) {
  if (s.node_count() != g.node_count()) throw Error("signal rows do not match graph nodes");
  StepGraphon w;
  w.blocks = g.node_count();
  w.entries.reserve(2 * g.edge_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (const auto& nb : g.neighbors(v)) w.entries.push_back({v, nb.node, g.edge(nb.edge).w});
  }
  StepSignal x;
  x.blocks = g.node_count();
  x.dimension = s.dimension();
  x.rows.reserve(x.blocks * x.dimension);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto r = s.row(v);
    x.rows.insert(x.rows.end(), r.begin(), r.end());
  }
  return {std::move(w), std::move(x)};
}

double phi_step(const StepGraphon& w, const StepSignal& x) {
  if (w.blocks != x.blocks) throw Error("step graphon and step signal have different block counts");
  if (w.blocks == 0) return 0.0;
  double sum = 0.0;
  for (const auto& e : w.entries) {
    auto a = x.row(e.row);
    auto b = x.row(e.col);
    double d2 = 0.0;
    for (std::size_t k = 0; k < x.dimension; ++k) d2 += (a[k] - b[k]) * (a[k] - b[k]);
    sum += e.value * d2;
  }
  const double n = static_cast<double>(w.blocks);
  return sum / (2.0 * n * n);
}

double step_identity_residual(const Graph& g, const GraphSignal& s) {
  const auto [w, x] = to_step_pair(g, s);
  const double n = static_cast<double>(g.node_count());
  const double tv = dirichlet_energy(g, s);
  const double diff = std::abs(phi_step(w, x) * n * n - tv);
  return tv > 0.0 ? diff / tv : diff;
}

double GridGraphon::at(double u, double v) const {
  return cell(interval_index(u, resolution), interval_index(v, resolution));
}

void GridGraphon::validate() const {
  if (resolution == 0 || values.size() != resolution * resolution) {
    throw Error("grid graphon must hold resolution^2 values");
  }
  for (std::size_t a = 0; a < resolution; ++a) {
    for (std::size_t b = 0; b < resolution; ++b) {
      const double v = cell(a, b);
      if (!(v >= 0.0 && v <= 1.0)) throw Error("grid graphon values must lie in [0, 1]");
      if (v != cell(b, a)) throw Error("grid graphon must be symmetric");
    }
  }
}

GridGraphon GridGraphon::constant(std::size_t resolution, double value) {
  GridGraphon w{resolution, std::vector<double>(resolution * resolution, value)};
  w.validate();
  return w;
}

GridGraphon GridGraphon::two_block_sbm(std::size_t resolution, double p_in, double p_out) {
  if (resolution == 0 || resolution % 2 != 0) throw Error("two-block SBM needs an even resolution");
  return from_function(resolution,
                       [&](double u, double v) { return (u < 0.5) == (v < 0.5) ? p_in : p_out; });
}

GridGraphon GridGraphon::from_function(std::size_t resolution,
                                       const std::function<double(double, double)>& fn) {
  GridGraphon w{resolution, std::vector<double>(resolution * resolution)};
  const double h = 1.0 / static_cast<double>(resolution);
  for (std::size_t a = 0; a < resolution; ++a) {
    for (std::size_t b = 0; b < resolution; ++b) {
      w.values[a * resolution + b] = fn((a + 0.5) * h, (b + 0.5) * h);
    }
  }
  w.validate();
  return w;
}

SignalRule two_block_indicator() {
  return [](double u) { return u < 0.5 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0}; };
}

SignalRule constant_signal(std::size_t dimension) {
  return [dimension](double) { return std::vector<double>(dimension, 1.0); };
}

double dirichlet_functional(const GridGraphon& w, const SignalRule& rule, std::size_t points) {
  if (points == 0) throw Error("quadrature needs at least one point");
  const double h = 1.0 / static_cast<double>(points);
  std::vector<std::vector<double>> x(points);
  std::vector<std::size_t> cell(points);
  for (std::size_t a = 0; a < points; ++a) {
    const double u = (a + 0.5) * h;
    x[a] = rule(u);
    cell[a] = interval_index(u, w.resolution);
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = 0; b < points; ++b) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < x[a].size(); ++k) d2 += (x[a][k] - x[b][k]) * (x[a][k] - x[b][k]);
      sum += w.cell(cell[a], cell[b]) * d2;
    }
  }
  return 0.5 * sum * h * h;
}

WRandomGraph sample_w_random_graph(const GridGraphon& w, std::size_t n, CounterRng& rng) {
  if (w.resolution == 0) throw Error("grid graphon has zero resolution");
  WRandomGraph out;
  out.latent.resize(n);
  for (auto& u : out.latent) u = rng.uniform01();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = w.at(out.latent[i], out.latent[j]);
      if (p > 0.0 && rng.bernoulli(p)) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0});
    }
  }
  out.graph = Graph::from_edges(n, std::move(edges));
  return out;
}

std::vector<ConvergencePoint> convergence_experiment(const GridGraphon& w, const SignalRule& rule,
                                                     double phi, std::span<const std::size_t> sizes,
                                                     std::size_t reps, std::uint64_t seed,
                                                     std::size_t threads) {
  if (reps == 0) throw Error("convergence experiment needs at least one replication");
  std::vector<ConvergencePoint> series;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t n = sizes[k];
    std::vector<double> normalized(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
      CounterRng rng(split_seed(split_seed(seed, k), r));
      auto sample = sample_w_random_graph(w, n, rng);
      const std::size_t dim = rule(0.0).size();
      std::vector<double> rows;
      rows.reserve(n * dim);
      for (double u : sample.latent) {
        auto x = rule(u);
        rows.insert(rows.end(), x.begin(), x.end());
      }
      const auto signal = GraphSignal::from_rows(n, dim, std::move(rows));
      const double nn = static_cast<double>(n);
      normalized[r] = dirichlet_energy(sample.graph, signal) / (nn * nn);
    });
    ConvergencePoint point;
    point.n = n;
    for (double v : normalized) {
      point.mean += v;
      point.deviation += std::abs(v - phi);
    }
    point.mean /= static_cast<double>(reps);
    point.deviation /= static_cast<double>(reps);
    series.push_back(point);
  }
  return series;
}

}  // namespace homest
