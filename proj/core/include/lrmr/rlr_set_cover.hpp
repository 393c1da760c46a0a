#pragma once

#include <cstdint>
#include <vector>

#include "lrmr/instances.hpp"
#include "lrmr/mpc/config.hpp"
#include "lrmr/mpc/trace.hpp"

namespace lrmr {

struct ScfOptions {
  /// An iteration fails when more than fail_multiplier * 2 eta elements are sampled.
  double fail_multiplier = 3.0;
};

/// Per-iteration record of the successful attempt.
struct ScfStats {
  std::uint32_t iterations = 0;
  /// |U_r| at the start of each iteration.
  std::vector<std::uint64_t> alive;
  std::vector<double> p;
  /// |U'| per iteration.
  std::vector<std::uint64_t> sampled;
  /// Every element the central machine scanned, in scan order.
  std::vector<ElementId> order;
};

struct CoverRun {
  Cover cover;
  mpc::RunTrace trace;
  ScfStats stats;
};

/// f-approximate weighted set cover. Elements (with their T_j) are sharded;
/// each iteration samples alive elements to the central machine, which runs
/// local ratio on them and broadcasts the newly zeroed sets.
CoverRun approx_sc_f(const SetCoverInstance& inst, const mpc::ClusterConfig& cfg, const ScfOptions& opts = {});

/// 2-approximate weighted vertex cover. Empty `vertex_weights` means unit
/// weights. Cover ids are vertex ids; stats refer to edge ids.
CoverRun vertex_cover_2approx(const Graph& g, const std::vector<Rational>& vertex_weights,
                              const mpc::ClusterConfig& cfg, const ScfOptions& opts = {});

/// Cluster regime for approx_sc_f: scale = number of sets, size = m, space factor f.
mpc::ConfigRequest sc_f_request(const SetCoverInstance& inst, double mu);
/// Cluster regime for vertex_cover_2approx: scale = n, size = |E|, space factor 2.
mpc::ConfigRequest vc_request(const Graph& g, double mu);

}  // namespace lrmr
