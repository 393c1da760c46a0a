#pragma once

#include <cstdint>
#include <algorithm>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "lrmr/instances.hpp"
#include "lrmr/mpc/config.hpp"
#include "lrmr/mpc/trace.hpp"
#include "lrmr/random.hpp"

namespace lrmr::test {

inline Graph make_graph(std::size_t n, std::initializer_list<std::tuple<VertexId, VertexId, std::int64_t>> edges) {
  std::vector<Edge> es;
  for (const auto& [u, v, w] : edges) es.push_back({u, v, Rational(w)});
  return Graph(n, std::move(es));
}

inline Graph unit_graph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<Edge> es;
  for (const auto& [u, v] : pairs) es.push_back({u, v, Rational(1)});
  return Graph(n, std::move(es));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> p;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) p.emplace_back(u, v);
  }
  return unit_graph(n, p);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> p;
  for (VertexId u = 0; u < n; ++u) p.emplace_back(u, static_cast<VertexId>((u + 1) % n));
  return unit_graph(n, p);
}

inline Graph complement(const Graph& g) {
  std::vector<std::pair<VertexId, VertexId>> p;
  for (VertexId u = 0; u < g.n(); ++u) {
    for (VertexId v = u + 1; v < g.n(); ++v) {
      if (!g.has_edge(u, v)) p.emplace_back(u, v);
    }
  }
  return unit_graph(g.n(), p);
}

/// Random simple graph with at most `max_edges` edges and integer weights in [1, hi].
inline Graph small_random_graph(Rng& rng, std::size_t max_n, std::size_t max_edges, std::int64_t hi) {
  const std::size_t n = 2 + rng.below(max_n - 1);
  std::vector<std::pair<VertexId, VertexId>> all;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  rng.shuffle(all);
  const std::size_t m = rng.below(std::min(max_edges, all.size()) + 1);
  std::vector<Edge> es;
  for (std::size_t k = 0; k < m; ++k) {
    es.push_back({all[k].first, all[k].second, Rational(1 + static_cast<std::int64_t>(rng.below(hi)))});
  }
  return Graph(n, std::move(es));
}

/// Random coverable set system with at most max_n sets over at most max_m elements.
inline SetCoverInstance small_random_cover(Rng& rng, std::size_t max_n, std::size_t max_m, std::int64_t hi) {
  const std::size_t n = 1 + rng.below(max_n);
  const std::size_t m = 1 + rng.below(max_m);
  std::vector<std::vector<ElementId>> sets(n);
  std::vector<char> hit(m, 0);
  const double density = 0.1 + 0.5 * rng.uniform01();
  for (std::size_t i = 0; i < n; ++i) {
    for (ElementId j = 0; j < m; ++j) {
      if (rng.bernoulli(density)) {
        sets[i].push_back(j);
        hit[j] = 1;
      }
    }
  }
  for (ElementId j = 0; j < m; ++j) {
    if (!hit[j]) {
      auto& s = sets[rng.below(n)];
      s.insert(std::lower_bound(s.begin(), s.end(), j), j);
    }
  }
  std::vector<Rational> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(Rational(1 + static_cast<std::int64_t>(rng.below(hi))));
  return SetCoverInstance(m, std::move(sets), std::move(w));
}

/// Exhaustive optimum written independently of the library oracles.
inline Rational enumerate_min_cover(const SetCoverInstance& inst) {
  std::optional<Rational> best;
  const std::size_t n = inst.n();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<char> cov(inst.m(), 0);
    Rational w;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      w += inst.weight(static_cast<SetId>(i));
      for (ElementId j : inst.set(static_cast<SetId>(i))) cov[j] = 1;
    }
    if (std::find(cov.begin(), cov.end(), 0) != cov.end()) continue;
    if (!best || w < *best) best = w;
  }
  return *best;
}

inline Rational enumerate_max_matching(const Graph& g, std::uint32_t b = 1) {
  Rational best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.m()); ++mask) {
    std::vector<std::uint32_t> load(g.n(), 0);
    Rational w;
    bool ok = true;
    for (EdgeId e = 0; e < g.m() && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      ok = ++load[g.edge(e).u] <= b && ++load[g.edge(e).v] <= b;
      w += g.edge(e).w;
    }
    if (ok && w > best) best = w;
  }
  return best;
}

/// Derived regime with test overrides. `machines` only ever adds machines,
/// so the input still fits the per-machine budget.
inline mpc::ClusterConfig tuned(mpc::ConfigRequest req, std::uint64_t seed, std::uint32_t machines = 0,
                                std::optional<std::uint64_t> eta = std::nullopt) {
  req.seed = seed;
  req.trace = mpc::TraceLevel::Summary;
  if (machines != 0) req.machine_count = std::max(machines, mpc::derive_config(req).machine_count);
  if (eta) req.eta = eta;
  req.trace = mpc::TraceLevel::Summary;
  return mpc::derive_config(req);
}

inline bool sorted_unique(const std::vector<std::uint32_t>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

/// Every recorded round stays within budget unless it carries a failure event.
inline bool memory_sound(const mpc::RunTrace& t) {
  for (const mpc::RoundRecord& r : t.rounds) {
    if (r.max_peak > t.config.memory_budget_words && !r.failure) return false;
  }
  return true;
}

}  // namespace lrmr::test
