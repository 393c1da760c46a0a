#include "lrmr/validate.hpp"

#include <algorithm>
#include <map>

namespace lrmr {

namespace {

ValidationReport malformed(std::string msg) {
  ValidationReport r;
  r.malformed = true;
  r.message = std::move(msg);
  return r;
}

}  // namespace

ValidationReport validate(const Matching& matching, const Graph& g, std::span<const std::uint32_t> b) {
  if (!b.empty() && b.size() != g.n()) return malformed("capacity vector has wrong length");
  std::vector<std::uint32_t> load(g.n(), 0);
  std::vector<bool> seen(g.m(), false);
  ValidationReport r;
  for (EdgeId e : matching.edges) {
    if (e >= g.m()) return malformed("edge id " + std::to_string(e) + " out of range");
    if (seen[e]) return malformed("edge id " + std::to_string(e) + " listed twice");
    seen[e] = true;
    r.objective += g.edge(e).w;
  }
  r.feasible = true;
  for (EdgeId e : matching.edges) {
    for (VertexId v : {g.edge(e).u, g.edge(e).v}) {
      const std::uint32_t cap = b.empty() ? 1 : b[v];
      if (++load[v] > cap && r.feasible) {
        r.feasible = false;
        r.witness = std::make_pair(std::size_t{v}, std::size_t{e});
        r.message = "vertex " + std::to_string(v) + " exceeds its capacity " + std::to_string(cap);
      }
    }
  }
  if (r.feasible) r.message = "feasible";
  return r;
}

ValidationReport validate(const Cover& cover, const SetCoverInstance& inst) {
  std::vector<bool> covered(inst.m(), false);
  std::vector<bool> seen(inst.n(), false);
  ValidationReport r;
  for (SetId i : cover.sets) {
    if (i >= inst.n()) return malformed("set id " + std::to_string(i) + " out of range");
    if (seen[i]) return malformed("set id " + std::to_string(i) + " listed twice");
    seen[i] = true;
    r.objective += inst.weight(i);
    for (ElementId j : inst.set(i)) covered[j] = true;
  }
  for (std::size_t j = 0; j < inst.m(); ++j) {
    if (!covered[j]) {
      if (r.uncovered == 0) r.witness = std::make_pair(j, j);
      ++r.uncovered;
    }
  }
  r.feasible = r.uncovered == 0;
  r.message = r.feasible ? "covers the ground set" : std::to_string(r.uncovered) + " elements uncovered";
  return r;
}

ValidationReport validate(const Colouring& colouring, const Graph& g) {
  ValidationReport r;
  const bool vertex_mode = colouring.kind == Colouring::Kind::Vertex;
  const std::size_t expected = vertex_mode ? g.n() : g.m();
  if (colouring.assignment.size() != expected) {
    return malformed("assignment has " + std::to_string(colouring.assignment.size()) + " entries, expected " +
                     std::to_string(expected));
  }
  r.objective = Rational(static_cast<std::int64_t>(colouring.colour_count()));
  r.feasible = true;
  if (vertex_mode) {
    for (EdgeId e = 0; e < g.m(); ++e) {
      const Edge& ed = g.edge(e);
      if (colouring.assignment[ed.u] == colouring.assignment[ed.v]) {
        r.feasible = false;
        r.witness = std::make_pair(std::size_t{ed.u}, std::size_t{ed.v});
        r.message = "edge {" + std::to_string(ed.u) + ", " + std::to_string(ed.v) + "} is monochromatic";
        return r;
      }
    }
  } else {
    std::map<Colour, EdgeId> at;
    for (VertexId v = 0; v < g.n(); ++v) {
      at.clear();
      for (EdgeId e : g.incident(v)) {
        auto [it, fresh] = at.emplace(colouring.assignment[e], e);
        if (!fresh) {
          r.feasible = false;
          r.witness = std::make_pair(std::size_t{it->second}, std::size_t{e});
          r.message = "edges " + std::to_string(it->second) + " and " + std::to_string(e) + " share vertex " +
                      std::to_string(v) + " and a colour";
          return r;
        }
      }
    }
  }
  r.message = "proper";
  return r;
}

ValidationReport validate_mis(std::span<const VertexId> vertices, const Graph& g) {
  std::vector<bool> in(g.n(), false);
  for (VertexId v : vertices) {
    if (v >= g.n()) return malformed("vertex " + std::to_string(v) + " out of range");
    if (in[v]) return malformed("vertex " + std::to_string(v) + " listed twice");
    in[v] = true;
  }
  ValidationReport r;
  r.objective = Rational(static_cast<std::int64_t>(vertices.size()));
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) {
      r.witness = std::make_pair(std::size_t{e.u}, std::size_t{e.v});
      r.message = "not independent";
      return r;
    }
  }
  for (VertexId v = 0; v < g.n(); ++v) {
    if (in[v]) continue;
    auto nb = g.neighbours(v);
    if (std::none_of(nb.begin(), nb.end(), [&](VertexId u) { return in[u]; })) {
      r.witness = std::make_pair(std::size_t{v}, std::size_t{v});
      r.message = "not maximal: vertex " + std::to_string(v) + " can be added";
      return r;
    }
  }
  r.feasible = true;
  r.message = "maximal independent set";
  return r;
}

ValidationReport validate_clique(std::span<const VertexId> vertices, const Graph& g) {
  std::vector<bool> in(g.n(), false);
  for (VertexId v : vertices) {
    if (v >= g.n()) return malformed("vertex " + std::to_string(v) + " out of range");
    if (in[v]) return malformed("vertex " + std::to_string(v) + " listed twice");
    in[v] = true;
  }
  ValidationReport r;
  r.objective = Rational(static_cast<std::int64_t>(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (!g.has_edge(vertices[a], vertices[b])) {
        r.witness = std::make_pair(std::size_t{vertices[a]}, std::size_t{vertices[b]});
        r.message = "not a clique";
        return r;
      }
    }
  }
  if (g.n() > 0 && vertices.empty()) {
    r.witness = std::make_pair(std::size_t{0}, std::size_t{0});
    r.message = "not maximal: empty clique";
    return r;
  }
  // v extends the clique iff it is adjacent to all |K| members.
  std::vector<std::size_t> hits(g.n(), 0);
  for (VertexId k : vertices) {
    for (VertexId u : g.neighbours(k)) ++hits[u];
  }
  for (VertexId v = 0; v < g.n(); ++v) {
    if (!in[v] && hits[v] == vertices.size()) {
      r.witness = std::make_pair(std::size_t{v}, std::size_t{v});
      r.message = "not maximal: vertex " + std::to_string(v) + " can be added";
      return r;
    }
  }
  r.feasible = true;
  r.message = "maximal clique";
  return r;
}

}  // namespace lrmr
