#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lrmr/instances.hpp"
#include "lrmr/mpc/config.hpp"
#include "lrmr/mpc/trace.hpp"

namespace lrmr {

struct MatchingOptions {
  /// Fail when the per-vertex sample lists hold more than fail_multiplier * eta edges in total.
  double fail_multiplier = 8.0;
};

struct MatchingStats {
  std::uint32_t iterations = 0;
  /// |E_i| at the start of each iteration.
  std::vector<std::uint64_t> alive;
  /// Largest alive degree at the start of each iteration.
  std::vector<std::uint64_t> max_degree;
  /// Edges shipped to the central machine per iteration.
  std::vector<std::uint64_t> sampled;
  /// Whether the iteration shipped every alive edge.
  std::vector<bool> full;
  /// Pushed edges, bottom first.
  std::vector<EdgeId> stack;
  /// Final accumulators.
  std::vector<Rational> phi;
};

struct MatchingRun {
  Matching matching;
  Rational weight;
  mpc::RunTrace trace;
  MatchingStats stats;
};

/// 2-approximate maximum weight matching by randomized local ratio.
MatchingRun approx_max_matching(const Graph& g, const mpc::ClusterConfig& cfg, const MatchingOptions& opts = {});

/// (3 - 2/max{2,b} + 2 eps)-approximate maximum weight b-matching. Empty `b`
/// means b = 1 everywhere. Throws InvalidEpsilon unless eps > 0.
MatchingRun approx_b_matching(const Graph& g, std::span<const std::uint32_t> b, const Rational& epsilon,
                              const mpc::ClusterConfig& cfg);

/// ln(1/delta) with delta = eps/(1+eps).
double log_inverse_delta(const Rational& epsilon);

mpc::ConfigRequest matching_request(const Graph& g, double mu);
/// Space factor ceil(b_max ln(1/delta)).
mpc::ConfigRequest b_matching_request(const Graph& g, std::span<const std::uint32_t> b, const Rational& epsilon,
                                      double mu);

}  // namespace lrmr
