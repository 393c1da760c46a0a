#include <algorithm>
#include <cassert>
#include <limits>

#include "lrmr/oracles.hpp"

namespace lrmr {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

class MisraGries {
 public:
  explicit MisraGries(const Graph& g)
      : g_(g),
        k_(static_cast<std::uint32_t>(g.max_degree() + 1)),
        colour_(g.m(), kNone),
        at_(g.n() * static_cast<std::size_t>(k_), kNone) {}

  std::vector<std::uint32_t> run() {
    for (EdgeId e = 0; e < g_.m(); ++e) colour_edge(e);
    return colour_;
  }

 private:
  EdgeId& slot(VertexId v, std::uint32_t c) { return at_[static_cast<std::size_t>(v) * k_ + c]; }
  bool is_free(VertexId v, std::uint32_t c) { return slot(v, c) == kNone; }

  std::uint32_t lowest_free(VertexId v) {
    for (std::uint32_t c = 0; c < k_; ++c) {
      if (is_free(v, c)) return c;
    }
    assert(false && "vertex with no free colour");
    return kNone;
  }

  void set_colour(EdgeId e, std::uint32_t c) {
    const Edge& ed = g_.edge(e);
    if (colour_[e] != kNone) {
      slot(ed.u, colour_[e]) = kNone;
      slot(ed.v, colour_[e]) = kNone;
    }
    colour_[e] = c;
    if (c != kNone) {
      slot(ed.u, c) = e;
      slot(ed.v, c) = e;
    }
  }

  // Fan of u starting with the uncoloured edge {u, v}: each next neighbour x
  // has colour(u, x) free on the previous fan vertex. Among candidates the
  // lowest colour wins; colours at u are distinct so the choice is unique.
  std::vector<VertexId> build_fan(VertexId u, VertexId v) {
    std::vector<VertexId> fan{v};
    std::vector<bool> in_fan(g_.n(), false);
    in_fan[v] = true;
    for (;;) {
      const VertexId last = fan.back();
      VertexId next = kNone;
      for (std::uint32_t c = 0; c < k_ && next == kNone; ++c) {
        const EdgeId e = slot(u, c);
        if (e == kNone || !is_free(last, c)) continue;
        const VertexId x = g_.other(e, u);
        if (!in_fan[x]) next = x;
      }
      if (next == kNone) return fan;
      in_fan[next] = true;
      fan.push_back(next);
    }
  }

  EdgeId edge_between(VertexId a, VertexId b) { return *g_.find_edge(a, b); }

  // Swap c and d on the maximal path from u that starts with colour d.
  void invert_path(VertexId u, std::uint32_t c, std::uint32_t d) {
    std::vector<EdgeId> path;
    VertexId x = u;
    std::uint32_t want = d;
    for (;;) {
      const EdgeId e = slot(x, want);
      if (e == kNone) break;
      path.push_back(e);
      x = g_.other(e, x);
      want = want == d ? c : d;
    }
    for (EdgeId e : path) set_colour(e, kNone);
    // Path edges alternate d, c, d, ...
    for (std::size_t i = 0; i < path.size(); ++i) set_colour(path[i], i % 2 == 0 ? c : d);
  }

  void colour_edge(EdgeId e) {
    const VertexId u = g_.edge(e).u;
    const VertexId v = g_.edge(e).v;
    std::vector<VertexId> fan = build_fan(u, v);
    const std::uint32_t c = lowest_free(u);
    const std::uint32_t d = lowest_free(fan.back());
    if (c != d) invert_path(u, c, d);

    // Longest prefix that is still a fan, stopping at the first vertex with d free.
    std::size_t w = 0;
    for (;; ++w) {
      if (is_free(fan[w], d)) break;
      assert(w + 1 < fan.size());
      const std::uint32_t next_colour = colour_[edge_between(u, fan[w + 1])];
      if (next_colour == kNone || !is_free(fan[w], next_colour)) {
        assert(false && "fan prefix broke before a d-free vertex");
      }
    }
    // Rotate: shift colours down the prefix, then colour {u, fan[w]} with d.
    for (std::size_t i = 0; i < w; ++i) {
      const EdgeId here = edge_between(u, fan[i]);
      const EdgeId there = edge_between(u, fan[i + 1]);
      const std::uint32_t cc = colour_[there];
      set_colour(there, kNone);
      set_colour(here, cc);
    }
    set_colour(edge_between(u, fan[w]), d);
  }

  const Graph& g_;
  std::uint32_t k_;
  std::vector<std::uint32_t> colour_;
  std::vector<EdgeId> at_;
};

}  // namespace

Colouring misra_gries_edge_colouring_seq(const Graph& g) {
  Colouring col;
  col.kind = Colouring::Kind::Edge;
  col.assignment.assign(g.m(), Colour{});
  if (g.m() == 0) return col;
  const auto colours = MisraGries(g).run();
  for (EdgeId e = 0; e < g.m(); ++e) col.assignment[e].colour = colours[e];
  return col;
}

}  // namespace lrmr
