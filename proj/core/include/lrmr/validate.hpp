#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lrmr/instances.hpp"

namespace lrmr {

struct ValidationReport {
  /// Some index was out of range; nothing else is meaningful then.
  bool malformed = false;
  bool feasible = false;
  /// Total weight, colour count or set size, depending on the check.
  Rational objective;
  std::string message;
  /// Elements left uncovered (covers only).
  std::size_t uncovered = 0;
  /// Offending pair: vertices for vertex checks, edge ids for edge colourings.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// b empty means b = 1 everywhere.
ValidationReport validate(const Matching& matching, const Graph& g, std::span<const std::uint32_t> b = {});
ValidationReport validate(const Cover& cover, const SetCoverInstance& inst);
ValidationReport validate(const Colouring& colouring, const Graph& g);

/// Independence and maximality.
ValidationReport validate_mis(std::span<const VertexId> vertices, const Graph& g);
/// Clique and maximality.
ValidationReport validate_clique(std::span<const VertexId> vertices, const Graph& g);

}  // namespace lrmr
