#pragma once

#include <cstddef>
#include <cstdint>

#include "lrmr/instances.hpp"
#include "lrmr/rational.hpp"

namespace lrmr {

/// floor(base^exponent) computed exactly for a non-negative rational exponent.
std::uint64_t floor_power(std::uint64_t base, const Rational& exponent);

/// Edge count requested by generate_graph: floor(n^{1+c}).
std::uint64_t edge_quota(std::size_t n, const Rational& c);

/// Random simple graph with exactly floor(n^{1+c}) edges (capped at the
/// complete graph only when c makes the quota equal to it), drawn uniformly
/// without replacement, with integer weights uniform in [lo, hi].
Graph generate_graph(std::size_t n, const Rational& target_c, std::int64_t lo, std::int64_t hi, std::uint64_t seed);

/// Random graph with independent edge probability p (used for dense and
/// tiny test inputs). Weights as above.
Graph generate_gnp(std::size_t n, double p, std::int64_t lo, std::int64_t hi, std::uint64_t seed);

/// Random set system; every element not drawn into any set is patched into
/// one uniformly chosen set.
SetCoverInstance generate_set_cover(std::size_t n, std::size_t m, double density, std::int64_t lo, std::int64_t hi,
                                    std::uint64_t seed);

}  // namespace lrmr
