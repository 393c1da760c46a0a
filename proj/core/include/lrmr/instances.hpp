#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lrmr/rational.hpp"

namespace lrmr {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using SetId = std::uint32_t;
using ElementId = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rational w;
};

/// Weighted undirected simple graph. Immutable after construction.
///
/// Edges keep the order and orientation they were given in; the adjacency
/// view lists, for every vertex, its neighbours in ascending order together
/// with the id of the connecting edge.
class Graph {
 public:
  Graph() = default;
  /// Throws InvalidInput on self-loops, out-of-range ids, duplicate pairs or
  /// negative weights.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  VertexId other(EdgeId e, VertexId v) const {
    const Edge& ed = edges_[e];
    return ed.u == v ? ed.v : ed.u;
  }

  /// Neighbours of v, ascending.
  std::span<const VertexId> neighbours(VertexId v) const {
    return {nbr_.data() + offsets_[v], nbr_.data() + offsets_[v + 1]};
  }
  /// Edge ids incident to v, aligned with neighbours(v).
  std::span<const EdgeId> incident(VertexId v) const {
    return {inc_.data() + offsets_[v], inc_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return find_edge(u, v).has_value(); }

  Rational weight_of(std::span<const EdgeId> edge_ids) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> nbr_;
  std::vector<EdgeId> inc_;
  std::size_t max_degree_ = 0;
};

/// Weighted set system over the ground set [m] with its dual incidence view.
class SetCoverInstance {
 public:
  SetCoverInstance() = default;
  /// Throws InvalidInput on out-of-range or repeated elements and on
  /// non-positive weights. Coverage is not required here.
  SetCoverInstance(std::size_t m, std::vector<std::vector<ElementId>> sets, std::vector<Rational> weights);

  /// Rebuilds the primal view from T_j lists (T_j must be ascending-free of repeats).
  static SetCoverInstance from_dual(std::size_t n, std::size_t m, const std::vector<std::vector<SetId>>& dual,
                                    std::vector<Rational> weights);

  std::size_t n() const noexcept { return sets_.size(); }
  std::size_t m() const noexcept { return m_; }

  std::span<const ElementId> set(SetId i) const { return sets_[i]; }
  const std::vector<std::vector<ElementId>>& sets() const noexcept { return sets_; }
  const Rational& weight(SetId i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  /// T_j, ascending set ids.
  std::span<const SetId> dual(ElementId j) const { return dual_[j]; }
  const std::vector<std::vector<SetId>>& duals() const noexcept { return dual_; }

  /// Maximum element frequency.
  std::size_t f() const noexcept { return f_; }
  /// Maximum set size.
  std::size_t delta() const noexcept { return delta_; }
  /// Total size sum_i |S_i|.
  std::size_t total_size() const noexcept { return total_size_; }
  Rational w_max() const;
  Rational w_min() const;

  std::optional<ElementId> first_uncoverable() const;
  /// Throws Uncoverable for the lowest element with empty T_j.
  void require_coverable() const;

  Rational weight_of(std::span<const SetId> ids) const;

 private:
  std::size_t m_ = 0;
  std::vector<std::vector<ElementId>> sets_;
  std::vector<Rational> weights_;
  std::vector<std::vector<SetId>> dual_;
  std::size_t f_ = 0;
  std::size_t delta_ = 0;
  std::size_t total_size_ = 0;
};

/// A (b-)matching: ascending edge ids.
struct Matching {
  std::vector<EdgeId> edges;
};

/// A set cover: ascending set ids.
struct Cover {
  std::vector<SetId> sets;
};

struct Colour {
  std::uint32_t group = 0;
  std::uint32_t colour = 0;
  friend auto operator<=>(const Colour&, const Colour&) = default;
};

struct Colouring {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Vertex;
  /// Indexed by vertex id (Vertex) or edge id (Edge).
  std::vector<Colour> assignment;

  /// Number of distinct (group, colour) pairs in use.
  std::size_t colour_count() const;
};

/// Vertex cover as set cover: set v = edges incident to v, element e = edge e.
SetCoverInstance vertex_cover_instance(const Graph& g, const std::vector<Rational>& vertex_weights);

/// c such that |E| = n^{1+c}; 0 for graphs with fewer than 2 vertices or no edges.
double density_exponent(std::size_t n, std::size_t size);

}  // namespace lrmr
