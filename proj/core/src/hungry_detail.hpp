#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lrmr/errors.hpp"
#include "lrmr/random.hpp"

namespace lrmr::detail {

struct Pick {
  std::uint32_t machine;
  std::uint32_t group;
  std::uint64_t rank;
};

/// Draws `groups` groups of `size` distinct indices out of the concatenation
/// of per-machine lists with the given lengths, and maps every index back to
/// (machine, rank).
inline std::vector<Pick> draw_groups(Rng& rng, const std::vector<std::uint64_t>& counts, std::uint64_t groups,
                                     std::uint64_t size) {
  std::vector<std::uint64_t> prefix(counts.size() + 1, 0);
  for (std::size_t x = 0; x < counts.size(); ++x) prefix[x + 1] = prefix[x] + counts[x];
  const std::uint64_t total = prefix.back();
  std::vector<Pick> picks;
  if (total == 0) return picks;
  size = std::min(size, total);
  picks.reserve(groups * size);
  for (std::uint64_t j = 0; j < groups; ++j) {
    for (std::uint64_t idx : rng.sample_distinct(total, size)) {
      const auto at = std::upper_bound(prefix.begin(), prefix.end(), idx) - prefix.begin() - 1;
      picks.push_back({static_cast<std::uint32_t>(at), static_cast<std::uint32_t>(j), idx - prefix[static_cast<std::size_t>(at)]});
    }
  }
  return picks;
}

inline void require_positive_mu(double mu) {
  if (!(mu > 0.0)) throw InvalidInput("mu must be positive for the hungry-greedy algorithms");
}

inline std::uint32_t phase_count(double alpha) {
  return static_cast<std::uint32_t>(std::ceil(1.0 / alpha - 1e-9));
}

}  // namespace lrmr::detail
