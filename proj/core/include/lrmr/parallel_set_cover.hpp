#pragma once

#include <cstdint>
#include <vector>

#include "lrmr/instances.hpp"
#include "lrmr/mpc/config.hpp"
#include "lrmr/mpc/trace.hpp"

namespace lrmr {

struct LnDeltaOptions {
  /// Run preprocess_weights first. Forced sets can cost up to eps * OPT on top of the (1+eps) H_Delta bound.
  bool preprocess = false;
};

/// One threshold value L and the inner iterations spent on it.
struct LStage {
  Rational L;
  /// Potential at every check of the inner loop condition; the last entry is 0.
  std::vector<std::uint64_t> phi;
  std::uint32_t iterations = 0;
  /// Iterations that resampled because a group was too large.
  std::uint32_t oversized = 0;
};

struct Addition {
  SetId set;
  /// |S \ C| when the set was added.
  std::uint64_t uncovered;
  Rational L;
};

struct LnDeltaStats {
  std::vector<LStage> stages;
  std::vector<Addition> additions;
  std::uint32_t iterations = 0;
  std::vector<SetId> forced;
};

struct LnDeltaRun {
  Cover cover;
  mpc::RunTrace trace;
  LnDeltaStats stats;
};

/// (1+eps) H_Delta-approximate weighted set cover for the regime m << n.
/// Sets are sharded; each inner iteration samples groups of almost optimal
/// sets per size class and the central machine adds qualifying sets.
LnDeltaRun approx_sc_lnDelta(const SetCoverInstance& inst, const Rational& epsilon, const mpc::ClusterConfig& cfg,
                             const LnDeltaOptions& opts = {});

struct Preprocessed {
  /// Kept sets restricted to the elements the forced sets leave uncovered.
  SetCoverInstance reduced;
  std::vector<SetId> forced;
  /// reduced set index -> original set index
  std::vector<SetId> kept;
  /// reduced element index -> original element
  std::vector<ElementId> elements;
  Rational gamma;
  std::uint64_t rounds = 0;
};

/// gamma = max_j min_{S ∋ j} w(S). Sets with w <= gamma eps / n are forced,
/// sets with w > m gamma dropped. Runs on the cluster; rounds are charged to `trace`.
Preprocessed preprocess_weights(const SetCoverInstance& inst, const Rational& epsilon, const mpc::ClusterConfig& cfg,
                                mpc::RunTrace& trace);

/// Sum of |S \ C| over sets with |S \ C| / w >= L / (1+eps). `covered` has one flag per element.
std::uint64_t potential_phi(const SetCoverInstance& inst, const std::vector<char>& covered, const Rational& L,
                            const Rational& epsilon);

/// Scale = m, size = sum |S_i|, space factor ln n.
mpc::ConfigRequest sc_lnDelta_request(const SetCoverInstance& inst, double mu);

}  // namespace lrmr
