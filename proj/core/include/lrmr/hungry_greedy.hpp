#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lrmr/instances.hpp"
#include "lrmr/mpc/config.hpp"
#include "lrmr/mpc/trace.hpp"

namespace lrmr {

struct MisStats {
  /// Sampling passes (rounds of group draws), all phases together.
  std::uint32_t iterations = 0;
  /// Per phase, |V_H| observed at each draw; the last entry of a phase is
  /// the one that fell below the cutoff.
  std::vector<std::vector<std::uint64_t>> heavy;
  /// |E_k| at each draw (mis_fast only).
  std::vector<std::uint64_t> edges;
  /// Vertices added by each draw.
  std::vector<std::uint64_t> added;
  /// Vertices added by the final sweep.
  std::uint64_t swept = 0;
};

struct MisRun {
  /// Ascending vertex ids.
  std::vector<VertexId> vertices;
  mpc::RunTrace trace;
  MisStats stats;
};

/// Maximal independent set with phase exponent mu/2. Throws InvalidInput if mu <= 0.
MisRun mis_simple(const Graph& g, const mpc::ClusterConfig& cfg);

/// Maximal independent set with degree classes of exponent mu/8; runs until
/// fewer than n^{1+mu} alive edges remain. Throws InvalidInput if mu <= 0.
MisRun mis_fast(const Graph& g, const mpc::ClusterConfig& cfg);

/// Maximal clique: mis_simple on the complement, which is never stored; each
/// pass relabels the active vertices and derives complement lists on demand.
MisRun maximal_clique(const Graph& g, const mpc::ClusterConfig& cfg);

struct Relabel {
  /// 1-based label per vertex: active vertices get 1..k in ascending id
  /// order, inactive ones k+1..n.
  std::vector<std::uint32_t> sigma;
  std::uint32_t k = 0;
};

Relabel relabel_active(std::span<const std::uint8_t> active);

mpc::ConfigRequest mis_request(const Graph& g, double mu);

}  // namespace lrmr
