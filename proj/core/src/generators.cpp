#include "lrmr/generators.hpp"

#include <algorithm>
#include <unordered_set>

#include "lrmr/errors.hpp"
#include "lrmr/random.hpp"

namespace lrmr {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void check_weights(std::int64_t lo, std::int64_t hi) {
  if (lo < 0 || hi < lo) throw InvalidInput("weight range must satisfy 0 <= lo <= hi");
}

}  // namespace

std::vector<std::uint64_t> Rng::sample_distinct(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw InvalidInput("cannot draw more distinct values than the range holds");
  std::vector<std::uint64_t> out;
  out.reserve(k);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(k * 2);
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = below(j + 1);
    if (seen.insert(t).second) {
      out.push_back(t);
    } else {
      seen.insert(j);
      out.push_back(j);
    }
  }
  return out;
}

std::uint64_t floor_power(std::uint64_t base, const Rational& exponent) {
  if (exponent.sign() < 0) throw InvalidInput("negative exponent");
  const auto big = exponent.to_big();
  const BigInt p = boost::multiprecision::numerator(big);
  const BigInt q = boost::multiprecision::denominator(big);
  if (base <= 1) return base == 1 || p == 0 ? 1 : 0;
  if (q > 100000 || p > 10000000) throw InvalidInput("exponent denominator too large");
  const auto pu = p.convert_to<unsigned>();
  const auto qu = q.convert_to<unsigned>();
  // Largest k with k^q <= base^p.
  const BigInt target = boost::multiprecision::pow(BigInt(base), pu);
  std::uint64_t lo = 0;
  std::uint64_t hi = 1;
  while (boost::multiprecision::pow(BigInt(hi), qu) <= target) {
    if (hi > (std::uint64_t{1} << 62)) throw InvalidInput("power does not fit 64 bits");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (boost::multiprecision::pow(BigInt(mid), qu) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::uint64_t edge_quota(std::size_t n, const Rational& c) { return floor_power(n, Rational(1) + c); }

Graph generate_graph(std::size_t n, const Rational& target_c, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("generate_graph needs n >= 2");
  check_weights(lo, hi);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t quota = edge_quota(n, target_c);
  // n^{1+c} with c <= 0 only overshoots at n = 2.
  if (quota > pairs && target_c.sign() <= 0) quota = pairs;
  if (quota > pairs) {
    throw InvalidInput("floor(n^{1+c}) = " + std::to_string(quota) + " exceeds the " + std::to_string(pairs) +
                       " pairs of the complete graph");
  }
  Rng rng(hash_words({seed, 0x6772617068ULL}));
  std::vector<std::uint64_t> idx = rng.sample_distinct(pairs, quota);
  std::sort(idx.begin(), idx.end());

  std::vector<Edge> edges;
  edges.reserve(idx.size());
  // Pair index walks rows u = 0, 1, ... with v in (u, n).
  std::uint64_t row_start = 0;
  std::uint64_t u = 0;
  for (std::uint64_t k : idx) {
    while (k >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    const std::uint64_t v = u + 1 + (k - row_start);
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), Rational(rng.between(lo, hi))});
  }
  return Graph(n, std::move(edges));
}

Graph generate_gnp(std::size_t n, double p, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw InvalidInput("edge probability outside [0, 1]");
  check_weights(lo, hi);
  Rng rng(hash_words({seed, 0x676e70ULL}));
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), Rational(0)});
    }
  }
  for (auto& e : edges) e.w = Rational(rng.between(lo, hi));
  return Graph(n, std::move(edges));
}

SetCoverInstance generate_set_cover(std::size_t n, std::size_t m, double density, std::int64_t lo, std::int64_t hi,
                                    std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw InvalidInput("density outside [0, 1]");
  if (lo <= 0 || hi < lo) throw InvalidInput("set weights must satisfy 0 < lo <= hi");
  if (n == 0 && m > 0) throw InvalidInput("cannot cover a non-empty ground set with zero sets");
  Rng rng(hash_words({seed, 0x736574636f766572ULL}));
  std::vector<std::vector<ElementId>> sets(n);
  std::vector<bool> hit(m, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (rng.uniform01() < density) {
        sets[i].push_back(static_cast<ElementId>(j));
        hit[j] = true;
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (hit[j]) continue;
    auto& s = sets[rng.below(n)];
    s.insert(std::upper_bound(s.begin(), s.end(), static_cast<ElementId>(j)), static_cast<ElementId>(j));
  }
  std::vector<Rational> weights;
  weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) weights.emplace_back(rng.between(lo, hi));
  return SetCoverInstance(m, std::move(sets), std::move(weights));
}

}  // namespace lrmr
