#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "homest/graph.hpp"
#include "homest/sampling.hpp"

namespace homest {

/// Estimators reject inclusion probabilities below this floor.
inline constexpr double kDefaultPiFloor = 1e-12;

enum class InclusionSource { analytic, approximate, empirical };
std::string_view to_string(InclusionSource source);

/// Pairwise co-inclusion frequencies over parent edges, row-major m x m.
struct EmpiricalJoint {
  std::size_t edge_count = 0;
  std::vector<double> frequency;
};

/// Per-edge inclusion probabilities of a design on one parent graph, plus the
/// joint inclusion rule when one is known.
///
/// pi[e] == 0 marks edge e as unsampleable under the model. Joint
/// probabilities exist for the two induced designs (closed form) and for
/// empirical models built with pairwise counts; the traceroute approximation
/// has none.
struct InclusionModel {
  InclusionSource source = InclusionSource::analytic;
  std::optional<SampleDesign> design;
  std::size_t node_count = 0;
  std::size_t replications = 0;
  std::vector<double> pi;
  std::variant<std::monostate, BernoulliDesign, SrsDesign, EmpiricalJoint> joint_rule;

  bool sampleable(EdgeId e) const { return pi.at(e) > 0.0; }
  bool has_joint() const { return !std::holds_alternative<std::monostate>(joint_rule); }
  /// True when pi and the joint rule depend only on how many endpoints the
  /// edges span (the closed-form induced designs).
  bool endpoint_symmetric() const {
    return std::holds_alternative<BernoulliDesign>(joint_rule) ||
           std::holds_alternative<SrsDesign>(joint_rule);
  }

  /// Joint inclusion probability of two sampled edges; joint(e, e) = pi(e).
  /// Throws EstimationError when the model has no joint rule.
  double joint(const SampledEdge& a, const SampledEdge& b) const;
  /// Joint probability for edges spanning `endpoints` distinct nodes (2..4);
  /// only for endpoint-symmetric models.
  double joint_by_endpoints(std::size_t endpoints) const;
};

/// Edge inclusion probability of an induced design: p^2 (Bernoulli) or
/// n*(n*-1) / (n(n-1)) (SRS). Throws DesignError for traceroute.
double analytic_edge_pi(const SampleDesign& design, std::size_t node_count);

/// Probability that a fixed set of `endpoints` nodes is entirely sampled:
/// p^m for Bernoulli, falling-factorial ratio for SRS (0 when n* < m).
double analytic_joint(const SampleDesign& design, std::size_t node_count, std::size_t endpoints);
double analytic_joint(const SampleDesign& design, const Graph& g, EdgeId e, EdgeId f);

InclusionModel analytic_pi(const SampleDesign& design, const Graph& g);

/// Ordered-pair edge betweenness: b(e) = sum over ordered (s, t), s != t, of
/// sigma_st(e) / sigma_st with hop-count shortest paths.
struct BetweennessTable {
  std::vector<double> b;
};

/// Brandes accumulation from every source. Sources are processed in fixed
/// blocks whose partial sums are reduced in block order, so the result does
/// not depend on `threads`.
BetweennessTable edge_betweenness(const Graph& g, std::size_t threads = 1);

/// CSV with header "i,j,b".
void write_betweenness_csv(std::ostream& out, const Graph& g, const BetweennessTable& table);

/// pi(e) = 1 - exp(-b(e) n_S n_T / n^2); edges with b(e) = 0 are unsampleable.
InclusionModel approx_pi_traceroute(const BetweennessTable& table, std::size_t n_sources,
                                    std::size_t n_targets, std::size_t node_count);

/// Monte Carlo inclusion frequencies over `replications` realizations of
/// `design`; realization r uses seed split_seed(design.seed, r). Counts are
/// integers, so the result is identical for any thread count.
InclusionModel empirical_pi(const Graph& g, const SampleDesign& design, std::size_t replications,
                            std::size_t threads = 1, bool with_joint = false);

/// Copies per-edge pi from `model` into the sample. Throws EstimationError if
/// a sampled edge has pi below `floor`.
void attach_inclusion(SampledGraph& sample, const InclusionModel& model,
                      double floor = kDefaultPiFloor);

}  // namespace homest
