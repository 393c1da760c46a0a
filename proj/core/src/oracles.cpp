#include "lrmr/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "lrmr/errors.hpp"

namespace lrmr {

namespace {

std::vector<ElementId> iota_elements(std::size_t m) {
  std::vector<ElementId> order(m);
  std::iota(order.begin(), order.end(), ElementId{0});
  return order;
}

std::vector<EdgeId> iota_edges(std::size_t m) {
  std::vector<EdgeId> order(m);
  std::iota(order.begin(), order.end(), EdgeId{0});
  return order;
}

void check_order(const Graph& g, std::span<const EdgeId> order) {
  for (EdgeId e : order) {
    if (e >= g.m()) throw InvalidInput("edge order references edge " + std::to_string(e));
  }
}

void check_capacities(const Graph& g, std::span<const std::uint32_t> b) {
  if (b.size() != g.n()) throw InvalidInput("need one capacity per vertex");
  for (std::uint32_t x : b) {
    if (x < 1) throw InvalidInput("capacities must be at least 1");
  }
}

}  // namespace

Cover lr_set_cover_seq(const SetCoverInstance& inst, std::span<const ElementId> order) {
  inst.require_coverable();
  std::vector<Rational> residual = inst.weights();
  for (ElementId j : order) {
    if (j >= inst.m()) throw InvalidInput("element order references element " + std::to_string(j));
    auto t = inst.dual(j);
    const Rational* lo = &residual[t[0]];
    for (SetId i : t) {
      if (residual[i] < *lo) lo = &residual[i];
    }
    if (lo->sign() <= 0) continue;
    const Rational eps = *lo;
    for (SetId i : t) residual[i] -= eps;
  }
  Cover c;
  for (SetId i = 0; i < inst.n(); ++i) {
    if (residual[i].sign() == 0) c.sets.push_back(i);
  }
  return c;
}

Cover lr_set_cover_seq(const SetCoverInstance& inst) {
  const auto order = iota_elements(inst.m());
  return lr_set_cover_seq(inst, order);
}

Matching unwind_stack(const Graph& g, std::span<const EdgeId> stack, std::span<const std::uint32_t> b) {
  std::vector<std::uint32_t> load(g.n(), 0);
  Matching mt;
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const Edge& e = g.edge(*it);
    const std::uint32_t bu = b.empty() ? 1 : b[e.u];
    const std::uint32_t bv = b.empty() ? 1 : b[e.v];
    if (load[e.u] < bu && load[e.v] < bv) {
      ++load[e.u];
      ++load[e.v];
      mt.edges.push_back(*it);
    }
  }
  std::sort(mt.edges.begin(), mt.edges.end());
  return mt;
}

LocalRatioRun lr_matching_seq(const Graph& g, std::span<const EdgeId> order) {
  check_order(g, order);
  LocalRatioRun run;
  run.phi.assign(g.n(), Rational(0));
  std::vector<bool> pushed(g.m(), false);
  for (EdgeId e : order) {
    if (pushed[e]) continue;
    const Edge& ed = g.edge(e);
    const Rational gain = ed.w - run.phi[ed.u] - run.phi[ed.v];
    if (gain.sign() <= 0) continue;
    run.phi[ed.u] += gain;
    run.phi[ed.v] += gain;
    pushed[e] = true;
    run.stack.push_back(e);
  }
  run.matching = unwind_stack(g, run.stack);
  return run;
}

LocalRatioRun lr_matching_seq(const Graph& g) {
  const auto order = iota_edges(g.m());
  return lr_matching_seq(g, order);
}

LocalRatioRun lr_matching_naive(const Graph& g, std::span<const EdgeId> order) {
  check_order(g, order);
  LocalRatioRun run;
  run.phi.assign(g.n(), Rational(0));
  std::vector<Rational> current(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) current[e] = g.edge(e).w;
  std::vector<bool> pushed(g.m(), false);
  for (EdgeId e : order) {
    if (pushed[e] || current[e].sign() <= 0) continue;
    const Rational gain = current[e];
    const Edge& ed = g.edge(e);
    for (VertexId x : {ed.u, ed.v}) {
      run.phi[x] += gain;
      for (EdgeId f : g.incident(x)) current[f] -= gain;
    }
    pushed[e] = true;
    run.stack.push_back(e);
  }
  run.matching = unwind_stack(g, run.stack);
  return run;
}

LocalRatioRun lr_bmatching_seq(const Graph& g, std::span<const std::uint32_t> b, const Rational& epsilon,
                               std::span<const EdgeId> order) {
  check_capacities(g, b);
  check_order(g, order);
  if (epsilon.sign() < 0) throw InvalidEpsilon("epsilon must be non-negative");
  const Rational slack = Rational(1) + epsilon;
  LocalRatioRun run;
  run.phi.assign(g.n(), Rational(0));
  std::vector<bool> pushed(g.m(), false);
  for (EdgeId e : order) {
    if (pushed[e]) continue;
    const Edge& ed = g.edge(e);
    const Rational sum = run.phi[ed.u] + run.phi[ed.v];
    if (ed.w <= slack * sum) continue;
    const Rational gain = ed.w - sum;
    run.phi[ed.u] += gain / Rational(b[ed.u]);
    run.phi[ed.v] += gain / Rational(b[ed.v]);
    pushed[e] = true;
    run.stack.push_back(e);
  }
  run.matching = unwind_stack(g, run.stack, b);
  return run;
}

LocalRatioRun lr_bmatching_seq(const Graph& g, std::span<const std::uint32_t> b, const Rational& epsilon) {
  const auto order = iota_edges(g.m());
  return lr_bmatching_seq(g, b, epsilon, order);
}

Rational bmatching_ratio_bound(std::uint32_t b_max, const Rational& epsilon) {
  const std::int64_t b = std::max<std::int64_t>(2, b_max);
  return Rational(3) - Rational(2, b) + Rational(2) * epsilon;
}

Cover eps_greedy_set_cover_seq(const SetCoverInstance& inst, const Rational& epsilon) {
  if (epsilon.sign() < 0) throw InvalidEpsilon("epsilon must be non-negative");
  inst.require_coverable();
  const Rational slack = Rational(1) + epsilon;
  std::vector<std::int64_t> fresh(inst.n());
  for (SetId i = 0; i < inst.n(); ++i) fresh[i] = static_cast<std::int64_t>(inst.set(i).size());
  std::vector<bool> covered(inst.m(), false);
  std::vector<bool> chosen(inst.n(), false);
  std::size_t left = inst.m();
  Cover c;
  while (left > 0) {
    Rational best = 0;
    for (SetId i = 0; i < inst.n(); ++i) {
      if (fresh[i] == 0) continue;
      const Rational ratio = Rational(fresh[i]) / inst.weight(i);
      if (ratio > best) best = ratio;
    }
    SetId pick = 0;
    for (; pick < inst.n(); ++pick) {
      if (fresh[pick] > 0 && Rational(fresh[pick]) * slack >= best * inst.weight(pick)) break;
    }
    chosen[pick] = true;
    c.sets.push_back(pick);
    for (ElementId j : inst.set(pick)) {
      if (covered[j]) continue;
      covered[j] = true;
      --left;
      for (SetId i : inst.dual(j)) --fresh[i];
    }
  }
  std::sort(c.sets.begin(), c.sets.end());
  return c;
}

Colouring greedy_vertex_colouring_seq(const Graph& g) {
  Colouring col;
  col.kind = Colouring::Kind::Vertex;
  col.assignment.assign(g.n(), Colour{});
  std::vector<std::size_t> mark(g.max_degree() + 2, ~std::size_t{0});
  for (VertexId v = 0; v < g.n(); ++v) {
    for (VertexId u : g.neighbours(v)) {
      if (u < v) mark[col.assignment[u].colour] = v;
    }
    std::uint32_t c = 0;
    while (mark[c] == v) ++c;
    col.assignment[v].colour = c;
  }
  return col;
}

std::vector<VertexId> greedy_mis_seq(const Graph& g) {
  std::vector<bool> blocked(g.n(), false);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.n(); ++v) {
    if (blocked[v]) continue;
    out.push_back(v);
    for (VertexId u : g.neighbours(v)) blocked[u] = true;
  }
  return out;
}

namespace {

struct SetCoverSearch {
  const SetCoverInstance& inst;
  std::vector<int> cover_count;
  std::vector<bool> take;
  Rational weight;
  Rational best;
  bool found = false;
  std::vector<bool> best_take;

  void run() {
    std::size_t j = 0;
    while (j < inst.m() && cover_count[j] > 0) ++j;
    if (j == inst.m()) {
      if (!found || weight < best) {
        found = true;
        best = weight;
        best_take = take;
      }
      return;
    }
    for (SetId i : inst.dual(static_cast<ElementId>(j))) {
      if (take[i]) continue;
      const Rational next = weight + inst.weight(i);
      if (found && next >= best) continue;
      take[i] = true;
      for (ElementId x : inst.set(i)) ++cover_count[x];
      const Rational saved = weight;
      weight = next;
      run();
      weight = saved;
      for (ElementId x : inst.set(i)) --cover_count[x];
      take[i] = false;
    }
  }
};

struct MatchingSearch {
  const Graph& g;
  std::span<const std::uint32_t> b;
  std::vector<std::uint32_t> load;
  std::vector<EdgeId> chosen;
  Rational weight;
  Rational best;
  std::vector<EdgeId> best_set;
  std::vector<Rational> suffix;

  void run(EdgeId e) {
    if (weight + suffix[e] <= best && !best_set.empty()) return;
    if (e == g.m()) {
      if (weight > best || best_set.empty()) {
        best = weight;
        best_set = chosen;
      }
      return;
    }
    const Edge& ed = g.edge(e);
    const std::uint32_t bu = b.empty() ? 1 : b[ed.u];
    const std::uint32_t bv = b.empty() ? 1 : b[ed.v];
    if (load[ed.u] < bu && load[ed.v] < bv) {
      ++load[ed.u];
      ++load[ed.v];
      chosen.push_back(e);
      const Rational saved = weight;
      weight += ed.w;
      run(e + 1);
      weight = saved;
      chosen.pop_back();
      --load[ed.u];
      --load[ed.v];
    }
    run(e + 1);
  }
};

}  // namespace

BruteForceResult brute_force_set_cover(const SetCoverInstance& inst) {
  if (inst.n() > kBruteForceCap) {
    throw TooLarge("brute force is capped at " + std::to_string(kBruteForceCap) + " sets");
  }
  inst.require_coverable();
  SetCoverSearch s{inst, std::vector<int>(inst.m(), 0), std::vector<bool>(inst.n(), false), Rational(0),
                   Rational(0), false, {}};
  s.run();
  BruteForceResult r;
  r.value = s.best;
  for (SetId i = 0; i < inst.n(); ++i) {
    if (s.best_take[i]) r.witness.push_back(i);
  }
  return r;
}

BruteForceResult brute_force_matching(const Graph& g, std::span<const std::uint32_t> b) {
  if (g.m() > kBruteForceCap) {
    throw TooLarge("brute force is capped at " + std::to_string(kBruteForceCap) + " edges");
  }
  if (!b.empty()) check_capacities(g, b);
  MatchingSearch s{g, b, std::vector<std::uint32_t>(g.n(), 0), {}, Rational(0), Rational(0), {}, {}};
  s.suffix.assign(g.m() + 1, Rational(0));
  for (std::size_t e = g.m(); e-- > 0;) s.suffix[e] = s.suffix[e + 1] + g.edge(static_cast<EdgeId>(e)).w;
  s.run(0);
  BruteForceResult r;
  r.value = s.best;
  r.witness.assign(s.best_set.begin(), s.best_set.end());
  return r;
}

}  // namespace lrmr
