#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrmr/instances.hpp"
#include "lrmr/mpc/config.hpp"
#include "lrmr/mpc/trace.hpp"

namespace lrmr {

struct ColouringOptions {
  /// Group count; ceil(n^{(c-mu)/2}) when unset.
  std::optional<std::uint64_t> kappa;
  /// A group with more than cap_constant * n^{1+mu} edges fails the attempt.
  double cap_constant = 13.0;
};

struct ColouringStats {
  std::uint64_t kappa = 1;
  /// Edges per group.
  std::vector<std::uint64_t> group_edges;
  /// Max degree inside each group.
  std::vector<std::uint64_t> group_degree;
  std::uint64_t max_group_degree = 0;
  std::uint64_t colours = 0;
};

struct ColouringRun {
  Colouring colouring;
  mpc::RunTrace trace;
  ColouringStats stats;
};

/// Random vertex partition into kappa groups, first-fit colouring per group.
ColouringRun vertex_colouring(const Graph& g, const mpc::ClusterConfig& cfg, const ColouringOptions& opts = {});

/// Random edge partition into kappa groups, Misra-Gries per group.
ColouringRun edge_colouring(const Graph& g, const mpc::ClusterConfig& cfg, const ColouringOptions& opts = {});

/// max(1, ceil(n^{(c-mu)/2})), 1 when c <= mu.
std::uint64_t default_kappa(const mpc::ClusterConfig& cfg);

/// Edge groups hold m/kappa edges, so kappa = max(1, ceil(n^{c-mu})).
std::uint64_t default_edge_kappa(const mpc::ClusterConfig& cfg);

mpc::ConfigRequest colouring_request(const Graph& g, double mu);

}  // namespace lrmr
