#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "lrmr/colouring.hpp"
#include "lrmr/mpc/cluster.hpp"
#include "lrmr/mpc/packet.hpp"
#include "lrmr/oracles.hpp"

namespace lrmr {

namespace {

using mpc::Packet;

constexpr std::uint64_t kVertexSalt = 0xa1;
constexpr std::uint64_t kEdgeSalt = 0xa2;

enum Tag : std::uint32_t { kGroup, kCount, kEdge, kColour };

struct CVertex {
  VertexId v;
  std::span<const VertexId> adj;
  std::uint32_t group = 0;
  std::uint32_t colour = 0;
};

struct CEdge {
  EdgeId e;
  VertexId u;
  VertexId v;
  std::uint32_t group = 0;
  std::uint32_t colour = 0;
};

struct ColState {
  std::vector<CVertex> vertices;
  std::vector<CEdge> edges;
  /// Same-group edges owned by a lower endpoint here: (group, u, v).
  std::vector<std::array<std::uint32_t, 3>> pending;
  /// Edges of the groups this machine colours: (group, a, b).
  std::vector<std::array<std::uint32_t, 3>> group_edges;

  std::uint64_t words() const {
    std::uint64_t w = 5 * edges.size() + 3 * pending.size() + 3 * group_edges.size();
    for (const CVertex& x : vertices) w += 3 + x.adj.size();
    return w;
  }
};

using ColCluster = mpc::Cluster<ColState, Packet>;

std::uint32_t group_machine(std::uint64_t group, std::uint32_t machines) {
  return static_cast<std::uint32_t>(group % machines);
}

/// Sends one count per group to its machine.
template <class Ctx>
void send_counts(Ctx& ctx, std::vector<std::uint32_t> groups) {
  std::sort(groups.begin(), groups.end());
  for (std::size_t lo = 0; lo < groups.size();) {
    std::size_t hi = lo;
    while (hi < groups.size() && groups[hi] == groups[lo]) ++hi;
    ctx.send(group_machine(groups[lo], ctx.machines()), mpc::packet(kCount, groups[lo], hi - lo, 2));
    lo = hi;
  }
}

/// Sums group sizes and fails the attempt on an oversized group.
void check_groups(ColCluster& cl, double cap, std::vector<std::uint64_t>& sizes) {
  cl.round("check-groups", [&](auto& ctx, ColState&, auto inbox) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> local;
    for (const auto& env : inbox) {
      if (!local.empty() && local.back().first == env.msg.a) {
        local.back().second += env.msg.b;
      } else {
        local.emplace_back(env.msg.a, env.msg.b);
      }
    }
    std::sort(local.begin(), local.end());
    for (std::size_t k = 1; k < local.size(); ++k) {
      if (local[k].first == local[k - 1].first) {
        local[k].second += local[k - 1].second;
        local[k - 1].second = 0;
      }
    }
    for (const auto& [grp, size] : local) {
      sizes[grp] += size;
      if (size > 0 && static_cast<double>(size) > cap) {
        ctx.declare_failure("group " + std::to_string(grp) + " has " + std::to_string(size) + " edges");
      }
    }
  });
}

void finish_stats(ColouringRun& run) {
  ColouringStats& st = run.stats;
  st.max_group_degree = st.group_degree.empty() ? 0 : *std::max_element(st.group_degree.begin(), st.group_degree.end());
  st.colours = run.colouring.colour_count();
  if (st.colours > st.kappa * (st.max_group_degree + 1)) {
    throw std::logic_error("colour count exceeds kappa * (max group degree + 1)");
  }
  run.trace.metrics = {{"kappa", st.kappa},
                       {"group_edges", st.group_edges},
                       {"group_degree", st.group_degree},
                       {"max_group_degree", st.max_group_degree},
                       {"colours", st.colours}};
}

}  // namespace

std::uint64_t default_kappa(const mpc::ClusterConfig& cfg) {
  if (cfg.c <= cfg.mu) return 1;
  return std::max<std::uint64_t>(1, mpc::ceil_pow(static_cast<double>(cfg.n), (cfg.c - cfg.mu) / 2.0));
}

std::uint64_t default_edge_kappa(const mpc::ClusterConfig& cfg) {
  if (cfg.c <= cfg.mu) return 1;
  return std::max<std::uint64_t>(1, mpc::ceil_pow(static_cast<double>(cfg.n), cfg.c - cfg.mu));
}

ColouringRun vertex_colouring(const Graph& g, const mpc::ClusterConfig& base, const ColouringOptions& opts) {
  ColouringRun run;
  const std::uint64_t kappa = opts.kappa.value_or(default_kappa(base));
  if (kappa < 1) throw InvalidInput("kappa must be at least 1");
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    const double cap = opts.cap_constant * std::pow(static_cast<double>(std::max<std::uint64_t>(2, cfg.n)), 1.0 + cfg.mu);
    ColCluster cl(cfg, run.trace);
    for (VertexId v = 0; v < g.n(); ++v) cl.state(mpc::home_of(cfg, kVertexSalt, v)).vertices.push_back({v, g.neighbours(v)});
    cl.check_resident();
    auto find = [](ColState& s, VertexId v) -> CVertex& {
      return *std::lower_bound(s.vertices.begin(), s.vertices.end(), v, [](const CVertex& x, VertexId y) { return x.v < y; });
    };

    cl.round("assign-groups", [&](auto& ctx, ColState& s, auto) {
      for (CVertex& x : s.vertices) {
        x.group = static_cast<std::uint32_t>(ctx.rng().below(kappa));
        for (VertexId w : x.adj) {
          Packet pk = mpc::packet(kGroup, w, x.v, 3);
          pk.c = x.group;
          ctx.send(mpc::home_of(cfg, kVertexSalt, w), std::move(pk));
        }
      }
    });

    cl.round("count-groups", [&](auto& ctx, ColState& s, auto inbox) {
      s.pending.clear();
      for (const auto& env : inbox) {
        const auto w = static_cast<VertexId>(env.msg.a);
        const auto u = static_cast<VertexId>(env.msg.b);
        const CVertex& x = find(s, w);
        if (w < u && x.group == env.msg.c) s.pending.push_back({x.group, w, u});
      }
      std::sort(s.pending.begin(), s.pending.end());
      std::vector<std::uint32_t> groups;
      groups.reserve(s.pending.size());
      for (const auto& rec : s.pending) groups.push_back(rec[0]);
      ctx.charge(groups.size());
      send_counts(ctx, std::move(groups));
    });

    ColouringStats stats;
    stats.kappa = kappa;
    stats.group_edges.assign(kappa, 0);
    stats.group_degree.assign(kappa, 0);
    check_groups(cl, cap, stats.group_edges);

    cl.round("ship-edges", [&](auto& ctx, ColState& s, auto) {
      for (const auto& [grp, u, v] : s.pending) {
        Packet pk = mpc::packet(kEdge, grp, (std::uint64_t{u} << 32) | v, 3);
        ctx.send(group_machine(grp, ctx.machines()), std::move(pk));
      }
      s.pending.clear();
    });

    cl.round("colour-groups", [&](auto& ctx, ColState& s, auto inbox) {
      s.group_edges.clear();
      for (const auto& env : inbox) {
        s.group_edges.push_back({static_cast<std::uint32_t>(env.msg.a), static_cast<std::uint32_t>(env.msg.b >> 32),
                                 static_cast<std::uint32_t>(env.msg.b & 0xffffffffu)});
      }
      std::sort(s.group_edges.begin(), s.group_edges.end());
      for (std::size_t lo = 0; lo < s.group_edges.size();) {
        std::size_t hi = lo;
        while (hi < s.group_edges.size() && s.group_edges[hi][0] == s.group_edges[lo][0]) ++hi;
        const std::uint32_t grp = s.group_edges[lo][0];
        // adjacency of the group's induced subgraph
        std::vector<std::pair<VertexId, VertexId>> arcs;
        arcs.reserve(2 * (hi - lo));
        for (std::size_t k = lo; k < hi; ++k) {
          arcs.emplace_back(s.group_edges[k][1], s.group_edges[k][2]);
          arcs.emplace_back(s.group_edges[k][2], s.group_edges[k][1]);
        }
        std::sort(arcs.begin(), arcs.end());
        ctx.charge(2 * arcs.size() + arcs.size());
        std::vector<std::pair<VertexId, std::uint32_t>> colour;  // ascending vertex
        std::uint64_t dmax = 0;
        for (std::size_t a = 0; a < arcs.size();) {
          std::size_t b = a;
          while (b < arcs.size() && arcs[b].first == arcs[a].first) ++b;
          dmax = std::max<std::uint64_t>(dmax, b - a);
          std::vector<std::uint32_t> used;
          for (std::size_t t = a; t < b; ++t) {
            const VertexId w = arcs[t].second;
            if (w > arcs[a].first) break;
            auto it = std::lower_bound(colour.begin(), colour.end(), w, [](const auto& p, VertexId y) { return p.first < y; });
            used.push_back(it->second);
          }
          std::sort(used.begin(), used.end());
          std::uint32_t c = 0;
          for (std::uint32_t x : used) {
            if (x == c) ++c;
            if (x > c) break;
          }
          colour.emplace_back(arcs[a].first, c);
          ctx.send(mpc::home_of(cfg, kVertexSalt, arcs[a].first), mpc::packet(kColour, arcs[a].first, c, 2));
          a = b;
        }
        stats.group_degree[grp] = dmax;
        lo = hi;
      }
      s.group_edges.clear();
    });

    cl.round("record-colours", [&](auto&, ColState& s, auto inbox) {
      for (CVertex& x : s.vertices) x.colour = 0;
      for (const auto& env : inbox) find(s, static_cast<VertexId>(env.msg.a)).colour = static_cast<std::uint32_t>(env.msg.b);
    });

    Colouring out;
    out.kind = Colouring::Kind::Vertex;
    out.assignment.resize(g.n());
    for (ColState& s : cl.states()) {
      for (const CVertex& x : s.vertices) out.assignment[x.v] = {x.group, x.colour};
    }
    return std::make_pair(std::move(out), std::move(stats));
  };
  auto [col, stats] = mpc::run_attempts(base, run.trace, attempt);
  run.colouring = std::move(col);
  run.stats = std::move(stats);
  finish_stats(run);
  return run;
}

ColouringRun edge_colouring(const Graph& g, const mpc::ClusterConfig& base, const ColouringOptions& opts) {
  ColouringRun run;
  const std::uint64_t kappa = opts.kappa.value_or(default_edge_kappa(base));
  if (kappa < 1) throw InvalidInput("kappa must be at least 1");
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    const double cap = opts.cap_constant * std::pow(static_cast<double>(std::max<std::uint64_t>(2, cfg.n)), 1.0 + cfg.mu);
    ColCluster cl(cfg, run.trace);
    for (EdgeId e = 0; e < g.m(); ++e) cl.state(mpc::home_of(cfg, kEdgeSalt, e)).edges.push_back({e, g.edge(e).u, g.edge(e).v});
    cl.check_resident();

    cl.round("assign-groups", [&](auto& ctx, ColState& s, auto) {
      std::vector<std::uint32_t> groups;
      groups.reserve(s.edges.size());
      for (CEdge& e : s.edges) {
        e.group = static_cast<std::uint32_t>(ctx.rng().below(kappa));
        groups.push_back(e.group);
      }
      ctx.charge(groups.size());
      send_counts(ctx, std::move(groups));
    });

    ColouringStats stats;
    stats.kappa = kappa;
    stats.group_edges.assign(kappa, 0);
    stats.group_degree.assign(kappa, 0);
    check_groups(cl, cap, stats.group_edges);

    cl.round("ship-edges", [&](auto& ctx, ColState& s, auto) {
      for (const CEdge& e : s.edges) {
        Packet pk = mpc::packet(kEdge, e.group, e.e, 3);
        pk.c = (std::uint64_t{e.u} << 32) | e.v;
        ctx.send(group_machine(e.group, ctx.machines()), std::move(pk));
      }
    });

    cl.round("colour-groups", [&](auto& ctx, ColState&, auto inbox) {
      std::vector<const Packet*> all;
      all.reserve(inbox.size());
      for (const auto& env : inbox) all.push_back(&env.msg);
      std::sort(all.begin(), all.end(), [](const Packet* x, const Packet* y) { return x->a != y->a ? x->a < y->a : x->b < y->b; });
      for (std::size_t lo = 0; lo < all.size();) {
        std::size_t hi = lo;
        while (hi < all.size() && all[hi]->a == all[lo]->a) ++hi;
        const auto grp = static_cast<std::uint32_t>(all[lo]->a);
        std::vector<VertexId> ids;
        for (std::size_t k = lo; k < hi; ++k) {
          ids.push_back(static_cast<VertexId>(all[k]->c >> 32));
          ids.push_back(static_cast<VertexId>(all[k]->c & 0xffffffffu));
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        auto local = [&](VertexId v) {
          return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
        };
        std::vector<Edge> sub;
        sub.reserve(hi - lo);
        for (std::size_t k = lo; k < hi; ++k) {
          sub.push_back({local(static_cast<VertexId>(all[k]->c >> 32)), local(static_cast<VertexId>(all[k]->c & 0xffffffffu)), Rational(0)});
        }
        const Graph part(ids.size(), std::move(sub));
        // per-vertex used-colour maps hold one entry per incident edge
        ctx.charge(2 * ids.size() + 5 * part.m());
        const Colouring c = misra_gries_edge_colouring_seq(part);
        stats.group_degree[grp] = part.max_degree();
        for (std::size_t k = lo; k < hi; ++k) {
          ctx.send(mpc::home_of(cfg, kEdgeSalt, all[k]->b), mpc::packet(kColour, all[k]->b, c.assignment[k - lo].colour, 2));
        }
        lo = hi;
      }
    });

    cl.round("record-colours", [&](auto&, ColState& s, auto inbox) {
      for (const auto& env : inbox) {
        auto it = std::lower_bound(s.edges.begin(), s.edges.end(), static_cast<EdgeId>(env.msg.a),
                                   [](const CEdge& x, EdgeId y) { return x.e < y; });
        it->colour = static_cast<std::uint32_t>(env.msg.b);
      }
    });

    Colouring out;
    out.kind = Colouring::Kind::Edge;
    out.assignment.resize(g.m());
    for (ColState& s : cl.states()) {
      for (const CEdge& e : s.edges) out.assignment[e.e] = {e.group, e.colour};
    }
    return std::make_pair(std::move(out), std::move(stats));
  };
  auto [col, stats] = mpc::run_attempts(base, run.trace, attempt);
  run.colouring = std::move(col);
  run.stats = std::move(stats);
  finish_stats(run);
  return run;
}

mpc::ConfigRequest colouring_request(const Graph& g, double mu) {
  mpc::ConfigRequest req;
  req.n = std::max<std::size_t>(2, g.n());
  req.size = std::max<std::size_t>(1, g.m());
  req.mu = mu;
  return req;
}

}  // namespace lrmr
