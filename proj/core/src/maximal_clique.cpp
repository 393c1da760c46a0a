#include <algorithm>
#include <cmath>

#include "hungry_detail.hpp"
#include "lrmr/hungry_greedy.hpp"
#include "lrmr/mpc/cluster.hpp"
#include "lrmr/mpc/packet.hpp"

namespace lrmr {

namespace {

using mpc::Packet;

constexpr std::uint64_t kVertexSalt = 0x91;

enum Tag : std::uint32_t { kLabel, kSize, kQuery, kAnswer, kCount, kRequest, kPull, kData, kMember };

struct CqVertex {
  VertexId v;
  std::span<const VertexId> adj;
  std::uint32_t label = 0;
  /// Labels of active neighbours, ascending.
  std::vector<std::uint32_t> nbr_labels;
};

struct CqState {
  std::vector<CqVertex> vertices;
  std::uint32_t k = 0;
  // central: N+ of the complement MIS, the current labelling and the clique
  std::vector<std::uint8_t> covered;
  std::vector<std::uint32_t> sigma;
  std::vector<VertexId> by_label;
  std::vector<VertexId> clique;

  std::uint64_t words() const {
    std::uint64_t w = 1 + covered.size() + sigma.size() + by_label.size() + clique.size();
    for (const CqVertex& x : vertices) w += 2 + x.adj.size() + x.nbr_labels.size();
    return w;
  }

  CqVertex& find(VertexId v) {
    return *std::lower_bound(vertices.begin(), vertices.end(), v, [](const CqVertex& x, VertexId y) { return x.v < y; });
  }
};

/// Complement degree inside the active set; 0 for inactive vertices.
std::uint64_t co_degree(const CqVertex& x, std::uint32_t k) {
  return x.label == 0 ? 0 : k - 1 - x.nbr_labels.size();
}

/// [1..k] minus the vertex's own label and its active neighbours' labels.
std::vector<std::uint32_t> co_list(const CqVertex& x, std::uint32_t k) {
  std::vector<std::uint32_t> out;
  out.reserve(co_degree(x, k));
  auto it = x.nbr_labels.begin();
  for (std::uint32_t l = 1; l <= k; ++l) {
    if (it != x.nbr_labels.end() && *it == l) {
      ++it;
      continue;
    }
    if (l != x.label) out.push_back(l);
  }
  return out;
}

}  // namespace

MisRun maximal_clique(const Graph& g, const mpc::ClusterConfig& base) {
  detail::require_positive_mu(base.mu);
  MisRun run;
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    const double n = static_cast<double>(std::max<std::size_t>(2, g.n()));
    const double alpha = cfg.mu / 2.0;
    const std::uint32_t phases = detail::phase_count(alpha);
    auto thr = [&](std::uint32_t i) { return std::max<std::uint64_t>(1, mpc::ceil_pow(n, 1.0 - i * alpha)); };
    const std::uint64_t gsize = std::max<std::uint64_t>(1, mpc::ceil_pow(n, cfg.mu / 2.0));

    mpc::Cluster<CqState, Packet> cl(cfg, run.trace);
    cl.central().covered.assign(g.n(), 0);
    for (VertexId v = 0; v < g.n(); ++v) cl.state(mpc::home_of(cfg, kVertexSalt, v)).vertices.push_back({v, g.neighbours(v), 0, {}});
    cl.check_resident();

    MisStats stats;
    stats.heavy.resize(phases);
    for (std::uint32_t phase = 1; phase <= phases;) {
      const std::uint64_t t = thr(phase);

      cl.round("relabel", [&](auto& ctx, CqState& s, auto) {
        if (!ctx.is_central()) return;
        std::vector<std::uint8_t> active(s.covered.size());
        for (std::size_t v = 0; v < active.size(); ++v) active[v] = !s.covered[v];
        Relabel r = relabel_active(active);
        s.sigma = std::move(r.sigma);
        s.by_label.assign(r.k + 1, 0);
        for (VertexId v = 0; v < s.sigma.size(); ++v) {
          if (s.sigma[v] <= r.k) {
            s.by_label[s.sigma[v]] = v;
            ctx.send(mpc::home_of(cfg, kVertexSalt, v), mpc::packet(kLabel, v, s.sigma[v], 2));
          }
        }
        for (std::uint32_t x = 0; x < ctx.machines(); ++x) ctx.send(x, mpc::packet(kSize, r.k));
      });

      cl.round("label-query", [&](auto& ctx, CqState& s, auto inbox) {
        for (CqVertex& x : s.vertices) {
          x.label = 0;
          x.nbr_labels.clear();
        }
        for (const auto& env : inbox) {
          if (env.msg.tag == kSize) {
            s.k = static_cast<std::uint32_t>(env.msg.a);
          } else {
            s.find(static_cast<VertexId>(env.msg.a)).label = static_cast<std::uint32_t>(env.msg.b);
          }
        }
        for (const CqVertex& x : s.vertices) {
          if (x.label == 0) continue;
          for (VertexId w : x.adj) ctx.send(mpc::home_of(cfg, kVertexSalt, w), mpc::packet(kQuery, w, x.v, 2));
        }
      });

      cl.round("label-answer", [&](auto& ctx, CqState& s, auto inbox) {
        for (const auto& env : inbox) {
          const CqVertex& w = s.find(static_cast<VertexId>(env.msg.a));
          if (w.label == 0) continue;
          Packet pk = mpc::packet(kAnswer, env.msg.b, w.label, 2);
          ctx.send(mpc::home_of(cfg, kVertexSalt, static_cast<VertexId>(env.msg.b)), std::move(pk));
        }
      });

      cl.round("heavy-count", [&](auto& ctx, CqState& s, auto inbox) {
        for (const auto& env : inbox) s.find(static_cast<VertexId>(env.msg.a)).nbr_labels.push_back(static_cast<std::uint32_t>(env.msg.b));
        std::uint64_t c = 0;
        for (CqVertex& x : s.vertices) {
          std::sort(x.nbr_labels.begin(), x.nbr_labels.end());
          c += co_degree(x, s.k) >= t;
        }
        ctx.send(0, mpc::packet(kCount, ctx.id(), c, 2));
      });

      bool pull = false;
      cl.round("draw", [&](auto& ctx, CqState&, auto inbox) {
        if (!ctx.is_central()) return;
        std::vector<std::uint64_t> counts(ctx.machines(), 0);
        for (const auto& env : inbox) counts[env.msg.a] = env.msg.b;
        std::uint64_t total = 0;
        for (std::uint64_t c : counts) total += c;
        stats.heavy[phase - 1].push_back(total);
        if (total < mpc::ceil_pow(n, phase * alpha)) {
          pull = true;
          for (std::uint32_t x = 0; x < ctx.machines(); ++x) {
            if (counts[x] > 0) ctx.send(x, mpc::packet(kPull, x));
          }
          return;
        }
        ++stats.iterations;
        const auto picks = detail::draw_groups(ctx.rng(), counts, mpc::ceil_pow(n, phase * alpha), gsize);
        ctx.charge(3 * picks.size());
        for (const detail::Pick& pk : picks) ctx.send(pk.machine, mpc::packet(kRequest, pk.group, pk.rank, 2));
      });

      cl.round("respond", [&](auto& ctx, CqState& s, auto inbox) {
        if (inbox.empty()) return;
        std::vector<std::uint32_t> heavy;
        for (std::uint32_t k = 0; k < s.vertices.size(); ++k) {
          if (co_degree(s.vertices[k], s.k) >= t) heavy.push_back(k);
        }
        auto ship = [&](const CqVertex& x) {
          Packet pk = mpc::packet(kData, x.v);
          pk.list = co_list(x, s.k);
          ctx.send(0, std::move(pk));
        };
        ctx.charge(heavy.size());
        if (inbox[0].msg.tag == kPull) {
          for (std::uint32_t k : heavy) ship(s.vertices[k]);
          return;
        }
        std::vector<char> shipped(heavy.size(), 0);
        for (const auto& env : inbox) {
          const CqVertex& x = s.vertices[heavy[env.msg.b]];
          ctx.send(0, mpc::packet(kMember, env.msg.a, x.v, 2));
          if (!shipped[env.msg.b]) {
            shipped[env.msg.b] = 1;
            ship(x);
          }
        }
      });

      std::uint64_t added = 0;
      cl.round("add", [&](auto& ctx, CqState& s, auto inbox) {
        if (!ctx.is_central()) return;
        std::vector<std::pair<VertexId, const std::vector<std::uint32_t>*>> idx;
        std::vector<std::pair<std::uint64_t, VertexId>> members;
        for (const auto& env : inbox) {
          if (env.msg.tag == kData) idx.emplace_back(static_cast<VertexId>(env.msg.a), &env.msg.list);
          if (env.msg.tag == kMember) members.emplace_back(env.msg.a, static_cast<VertexId>(env.msg.b));
        }
        std::sort(idx.begin(), idx.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::sort(members.begin(), members.end());
        ctx.charge(2 * members.size() + 2 * idx.size());
        auto try_add = [&](VertexId v, const std::vector<std::uint32_t>& labels, std::uint64_t need) {
          if (s.covered[v]) return false;
          std::uint64_t d = 0;
          for (std::uint32_t l : labels) d += !s.covered[s.by_label[l]];
          if (d < need) return false;
          s.clique.push_back(v);
          s.covered[v] = 1;
          for (std::uint32_t l : labels) s.covered[s.by_label[l]] = 1;
          return true;
        };
        if (pull) {
          for (const auto& [v, list] : idx) added += try_add(v, *list, 0);
        } else {
          auto list_of = [&](VertexId v) -> const std::vector<std::uint32_t>& {
            return *std::lower_bound(idx.begin(), idx.end(), v, [](const auto& p, VertexId x) { return p.first < x; })->second;
          };
          for (std::size_t lo = 0; lo < members.size();) {
            std::size_t hi = lo;
            while (hi < members.size() && members[hi].first == members[lo].first) ++hi;
            for (std::size_t k = lo; k < hi; ++k) {
              if (try_add(members[k].second, list_of(members[k].second), t)) {
                ++added;
                break;
              }
            }
            lo = hi;
          }
        }
      });
      stats.added.push_back(added);
      if (pull) ++phase;
    }
    CqState& c = cl.central();
    for (VertexId v = 0; v < c.covered.size(); ++v) {
      if (!c.covered[v]) {
        c.covered[v] = 1;
        c.clique.push_back(v);
        ++stats.swept;
      }
    }
    std::vector<VertexId> out = c.clique;
    std::sort(out.begin(), out.end());
    return std::make_pair(std::move(out), std::move(stats));
  };
  auto [vs, stats] = mpc::run_attempts(base, run.trace, attempt);
  run.vertices = std::move(vs);
  run.stats = std::move(stats);
  run.trace.metrics = {{"iterations", run.stats.iterations},
                       {"heavy", run.stats.heavy},
                       {"added", run.stats.added},
                       {"swept", run.stats.swept}};
  return run;
}

}  // namespace lrmr
