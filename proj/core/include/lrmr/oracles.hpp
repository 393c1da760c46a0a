#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lrmr/instances.hpp"
#include "lrmr/rational.hpp"

namespace lrmr {

/// Local ratio set cover. Elements are scanned in `order` (any sequence of
/// element ids); an element is processed only while all of its sets still
/// have positive residual weight. Returns the zero-residual sets.
Cover lr_set_cover_seq(const SetCoverInstance& inst, std::span<const ElementId> order);
/// Ascending element order.
Cover lr_set_cover_seq(const SetCoverInstance& inst);

struct LocalRatioRun {
  Matching matching;
  /// Pushed edges, bottom of the stack first.
  std::vector<EdgeId> stack;
  /// Final per-vertex accumulators.
  std::vector<Rational> phi;
};

/// Local ratio matching with phi accumulators. Each edge of `order` whose
/// modified weight w - phi(u) - phi(v) is positive is pushed; the stack is
/// then unwound greedily.
LocalRatioRun lr_matching_seq(const Graph& g, std::span<const EdgeId> order);
LocalRatioRun lr_matching_seq(const Graph& g);

/// Same procedure with every neighbouring edge weight reduced explicitly.
LocalRatioRun lr_matching_naive(const Graph& g, std::span<const EdgeId> order);

/// epsilon-adjusted local ratio b-matching. An edge is alive while
/// w > (1+eps)(phi(u)+phi(v)) and it has not been pushed.
LocalRatioRun lr_bmatching_seq(const Graph& g, std::span<const std::uint32_t> b, const Rational& epsilon,
                               std::span<const EdgeId> order);
LocalRatioRun lr_bmatching_seq(const Graph& g, std::span<const std::uint32_t> b, const Rational& epsilon);

/// Greedy unwind of a local ratio stack respecting capacities (b empty = 1).
Matching unwind_stack(const Graph& g, std::span<const EdgeId> stack, std::span<const std::uint32_t> b = {});

/// 3 - 2/max{2,b} + 2 eps.
Rational bmatching_ratio_bound(std::uint32_t b_max, const Rational& epsilon);

/// Repeatedly adds the lowest-indexed set whose cost ratio is within a
/// factor 1+eps of the best one.
Cover eps_greedy_set_cover_seq(const SetCoverInstance& inst, const Rational& epsilon);

/// First-fit in vertex order; single group.
Colouring greedy_vertex_colouring_seq(const Graph& g);

/// Lowest-id first-fit maximal independent set, ascending.
std::vector<VertexId> greedy_mis_seq(const Graph& g);

/// Proper edge colouring with at most max_degree + 1 colours; single group.
Colouring misra_gries_edge_colouring_seq(const Graph& g);

struct BruteForceResult {
  Rational value;
  /// Set ids or edge ids of one optimal solution, ascending.
  std::vector<std::uint32_t> witness;
};

inline constexpr std::size_t kBruteForceCap = 22;

/// Minimum weight cover. TooLarge beyond kBruteForceCap sets; Uncoverable.
BruteForceResult brute_force_set_cover(const SetCoverInstance& inst);
/// Maximum weight (b-)matching. TooLarge beyond kBruteForceCap edges.
BruteForceResult brute_force_matching(const Graph& g, std::span<const std::uint32_t> b = {});

}  // namespace lrmr
