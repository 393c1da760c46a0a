#include "lrmr/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "lrmr/errors.hpp"

namespace lrmr {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ > std::numeric_limits<VertexId>::max() || edges_.size() > std::numeric_limits<EdgeId>::max()) {
    throw InvalidInput("graph too large for 32-bit ids");
  }
  std::vector<std::size_t> deg(n_, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u >= n_ || ed.v >= n_) {
      throw InvalidInput("edge " + std::to_string(e) + " has an endpoint outside [0, " + std::to_string(n_) + ")");
    }
    if (ed.u == ed.v) throw InvalidInput("edge " + std::to_string(e) + " is a self-loop");
    if (ed.w.sign() < 0) throw InvalidInput("edge " + std::to_string(e) + " has negative weight");
    ++deg[ed.u];
    ++deg[ed.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  nbr_.resize(offsets_[n_]);
  inc_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    nbr_[fill[ed.u]] = ed.v;
    inc_[fill[ed.u]++] = static_cast<EdgeId>(e);
    nbr_[fill[ed.v]] = ed.u;
    inc_[fill[ed.v]++] = static_cast<EdgeId>(e);
  }
  std::vector<std::pair<VertexId, EdgeId>> tmp;
  for (std::size_t v = 0; v < n_; ++v) {
    const std::size_t lo = offsets_[v], hi = offsets_[v + 1];
    tmp.clear();
    for (std::size_t k = lo; k < hi; ++k) tmp.emplace_back(nbr_[k], inc_[k]);
    std::sort(tmp.begin(), tmp.end());
    for (std::size_t k = lo; k < hi; ++k) {
      nbr_[k] = tmp[k - lo].first;
      inc_[k] = tmp[k - lo].second;
      if (k > lo && nbr_[k] == nbr_[k - 1]) {
        throw InvalidInput("duplicate edge {" + std::to_string(v) + ", " + std::to_string(nbr_[k]) + "}");
      }
    }
    max_degree_ = std::max(max_degree_, hi - lo);
  }
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  if (u >= n_ || v >= n_) return std::nullopt;
  auto nb = neighbours(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident(u)[static_cast<std::size_t>(it - nb.begin())];
}

Rational Graph::weight_of(std::span<const EdgeId> edge_ids) const {
  Rational total = 0;
  for (EdgeId e : edge_ids) total += edges_.at(e).w;
  return total;
}

SetCoverInstance::SetCoverInstance(std::size_t m, std::vector<std::vector<ElementId>> sets,
                                   std::vector<Rational> weights)
    : m_(m), sets_(std::move(sets)), weights_(std::move(weights)) {
  if (sets_.size() != weights_.size()) throw InvalidInput("set count and weight count differ");
  if (m_ > std::numeric_limits<ElementId>::max() || sets_.size() > std::numeric_limits<SetId>::max()) {
    throw InvalidInput("set system too large for 32-bit ids");
  }
  dual_.assign(m_, {});
  std::vector<SetId> last_seen(m_, std::numeric_limits<SetId>::max());
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (weights_[i].sign() <= 0) throw InvalidInput("set " + std::to_string(i) + " has non-positive weight");
    for (ElementId j : sets_[i]) {
      if (j >= m_) throw InvalidInput("set " + std::to_string(i) + " contains element " + std::to_string(j) + " >= m");
      if (last_seen[j] == i) throw InvalidInput("set " + std::to_string(i) + " repeats element " + std::to_string(j));
      last_seen[j] = static_cast<SetId>(i);
      dual_[j].push_back(static_cast<SetId>(i));
    }
    delta_ = std::max(delta_, sets_[i].size());
    total_size_ += sets_[i].size();
  }
  for (const auto& t : dual_) f_ = std::max(f_, t.size());
}

SetCoverInstance SetCoverInstance::from_dual(std::size_t n, std::size_t m, const std::vector<std::vector<SetId>>& dual,
                                             std::vector<Rational> weights) {
  if (dual.size() != m) throw InvalidInput("dual view must have m lists");
  std::vector<std::vector<ElementId>> sets(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (SetId i : dual[j]) {
      if (i >= n) throw InvalidInput("dual list references set " + std::to_string(i) + " >= n");
      sets[i].push_back(static_cast<ElementId>(j));
    }
  }
  return SetCoverInstance(m, std::move(sets), std::move(weights));
}

Rational SetCoverInstance::w_max() const {
  if (weights_.empty()) return 0;
  return *std::max_element(weights_.begin(), weights_.end());
}

Rational SetCoverInstance::w_min() const {
  if (weights_.empty()) return 0;
  return *std::min_element(weights_.begin(), weights_.end());
}

std::optional<ElementId> SetCoverInstance::first_uncoverable() const {
  for (std::size_t j = 0; j < m_; ++j) {
    if (dual_[j].empty()) return static_cast<ElementId>(j);
  }
  return std::nullopt;
}

void SetCoverInstance::require_coverable() const {
  if (auto j = first_uncoverable()) throw Uncoverable(*j);
}

Rational SetCoverInstance::weight_of(std::span<const SetId> ids) const {
  Rational total = 0;
  for (SetId i : ids) total += weights_.at(i);
  return total;
}

std::size_t Colouring::colour_count() const {
  std::set<Colour> used(assignment.begin(), assignment.end());
  return used.size();
}

SetCoverInstance vertex_cover_instance(const Graph& g, const std::vector<Rational>& vertex_weights) {
  if (vertex_weights.size() != g.n()) throw InvalidInput("need one weight per vertex");
  std::vector<std::vector<ElementId>> sets(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) {
    auto inc = g.incident(static_cast<VertexId>(v));
    sets[v].assign(inc.begin(), inc.end());
    std::sort(sets[v].begin(), sets[v].end());
  }
  return SetCoverInstance(g.m(), std::move(sets), vertex_weights);
}

double density_exponent(std::size_t n, std::size_t size) {
  if (n < 2 || size == 0) return 0.0;
  return std::log(static_cast<double>(size)) / std::log(static_cast<double>(n)) - 1.0;
}

}  // namespace lrmr
