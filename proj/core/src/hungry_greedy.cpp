#include <algorithm>
#include <cmath>
#include <map>

#include "hungry_detail.hpp"
#include "lrmr/hungry_greedy.hpp"
#include "lrmr/mpc/cluster.hpp"
#include "lrmr/mpc/packet.hpp"

namespace lrmr {

namespace {

using mpc::Packet;

constexpr std::uint64_t kVertexSalt = 0x81;

enum Tag : std::uint32_t { kCount, kRequest, kPull, kData, kMember, kCovered, kQuery, kHit };

struct HgVertex {
  VertexId v;
  std::span<const VertexId> adj;
  /// Neighbours not yet in N+(I), ascending.
  std::vector<VertexId> live;
  bool covered = false;
};

struct HgState {
  std::vector<HgVertex> vertices;
  std::vector<char> covered;
  std::vector<VertexId> independent;

  std::uint64_t words() const {
    std::uint64_t w = covered.size() + independent.size();
    for (const HgVertex& x : vertices) w += 2 + x.adj.size() + x.live.size();
    return w;
  }

  HgVertex& find(VertexId v) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v, [](const HgVertex& x, VertexId y) { return x.v < y; });
    return *it;
  }
};

using HgCluster = mpc::Cluster<HgState, Packet>;

std::uint64_t degree_of(const HgVertex& x) { return x.covered ? 0 : x.live.size(); }

void load(HgCluster& cl, const Graph& g) {
  cl.central().covered.assign(g.n(), 0);
  for (VertexId v = 0; v < g.n(); ++v) {
    const auto adj = g.neighbours(v);
    cl.state(mpc::home_of(cl.config(), kVertexSalt, v)).vertices.push_back({v, adj, {adj.begin(), adj.end()}, false});
  }
  cl.check_resident();
}

Packet data_packet(const HgVertex& x) {
  Packet pk = mpc::packet(kData, x.v);
  pk.list = x.live;
  return pk;
}

/// Adds v when it is outside N+(I) and has at least `thr` neighbours outside
/// N+(I); newly covered vertices are appended to `fresh`.
bool try_add(HgState& c, VertexId v, const std::vector<std::uint32_t>& list, std::uint64_t thr,
             std::vector<VertexId>& fresh) {
  if (c.covered[v]) return false;
  if (thr > 0) {
    std::uint64_t d = 0;
    for (VertexId w : list) d += !c.covered[w];
    if (d < thr) return false;
  }
  c.independent.push_back(v);
  c.covered[v] = 1;
  fresh.push_back(v);
  for (VertexId w : list) {
    if (!c.covered[w]) {
      c.covered[w] = 1;
      fresh.push_back(w);
    }
  }
  return true;
}

using DataIndex = std::vector<std::pair<VertexId, const std::vector<std::uint32_t>*>>;

const std::vector<std::uint32_t>& list_of(const DataIndex& idx, VertexId v) {
  auto it = std::lower_bound(idx.begin(), idx.end(), v, [](const auto& p, VertexId x) { return p.first < x; });
  return *it->second;
}

template <class Inbox>
DataIndex index_data(const Inbox& inbox) {
  DataIndex idx;
  for (const auto& env : inbox) {
    if (env.msg.tag == kData) idx.emplace_back(static_cast<VertexId>(env.msg.a), &env.msg.list);
  }
  std::sort(idx.begin(), idx.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return idx;
}

template <class Ctx>
void notify_covered(Ctx& ctx, const mpc::ClusterConfig& cfg, std::vector<VertexId>& fresh) {
  std::sort(fresh.begin(), fresh.end());
  for (VertexId u : fresh) ctx.send(mpc::home_of(cfg, kVertexSalt, u), mpc::packet(kCovered, u));
}

/// Delivers N+ bits, then refreshes every alive list with a query/answer
/// exchange; `after` runs on each machine at the end (typically to report counts).
template <class After>
void maintain(HgCluster& cl, After&& after) {
  const mpc::ClusterConfig& cfg = cl.config();
  cl.round("covered", [&](auto& ctx, HgState& s, auto inbox) {
    for (const auto& env : inbox) {
      HgVertex& x = s.find(static_cast<VertexId>(env.msg.a));
      x.covered = true;
      x.live.clear();
      x.live.shrink_to_fit();
    }
    for (const HgVertex& x : s.vertices) {
      if (x.covered) continue;
      for (VertexId w : x.live) ctx.send(mpc::home_of(cfg, kVertexSalt, w), mpc::packet(kQuery, w, x.v, 2));
    }
  });
  cl.round("answer", [&](auto& ctx, HgState& s, auto inbox) {
    for (const auto& env : inbox) {
      if (s.find(static_cast<VertexId>(env.msg.a)).covered) {
        const auto v = static_cast<VertexId>(env.msg.b);
        ctx.send(mpc::home_of(cfg, kVertexSalt, v), mpc::packet(kHit, v, env.msg.a, 2));
      }
    }
  });
  cl.round("update", [&](auto& ctx, HgState& s, auto inbox) {
    std::vector<std::pair<VertexId, VertexId>> hits;
    hits.reserve(inbox.size());
    for (const auto& env : inbox) hits.emplace_back(static_cast<VertexId>(env.msg.a), static_cast<VertexId>(env.msg.b));
    std::sort(hits.begin(), hits.end());
    ctx.charge(2 * hits.size());
    for (std::size_t lo = 0; lo < hits.size();) {
      std::size_t hi = lo;
      while (hi < hits.size() && hits[hi].first == hits[lo].first) ++hi;
      HgVertex& x = s.find(hits[lo].first);
      std::erase_if(x.live, [&](VertexId w) {
        return std::binary_search(hits.begin() + static_cast<std::ptrdiff_t>(lo),
                                  hits.begin() + static_cast<std::ptrdiff_t>(hi), std::make_pair(x.v, w));
      });
      lo = hi;
    }
    after(ctx, s);
  });
}

std::vector<VertexId> final_sweep(HgState& c, MisStats& stats) {
  for (VertexId v = 0; v < c.covered.size(); ++v) {
    if (!c.covered[v]) {
      c.covered[v] = 1;
      c.independent.push_back(v);
      ++stats.swept;
    }
  }
  std::vector<VertexId> out = c.independent;
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json stats_json(const MisStats& s) {
  return {{"iterations", s.iterations}, {"heavy", s.heavy}, {"edges", s.edges}, {"added", s.added}, {"swept", s.swept}};
}

}  // namespace

MisRun mis_simple(const Graph& g, const mpc::ClusterConfig& base) {
  detail::require_positive_mu(base.mu);
  MisRun run;
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    const double n = static_cast<double>(std::max<std::size_t>(2, g.n()));
    const double alpha = cfg.mu / 2.0;
    const std::uint32_t phases = detail::phase_count(alpha);
    auto thr = [&](std::uint32_t i) { return std::max<std::uint64_t>(1, mpc::ceil_pow(n, 1.0 - i * alpha)); };
    const std::uint64_t gsize = std::max<std::uint64_t>(1, mpc::ceil_pow(n, cfg.mu / 2.0));

    HgCluster cl(cfg, run.trace);
    load(cl, g);
    MisStats stats;
    stats.heavy.resize(phases);
    auto report = [&](std::uint64_t t) {
      return [&, t](auto& ctx, HgState& s) {
        std::uint64_t c = 0;
        for (const HgVertex& x : s.vertices) c += degree_of(x) >= t;
        ctx.send(0, mpc::packet(kCount, ctx.id(), c, 2));
      };
    };
    cl.round("heavy-count", [&](auto& ctx, HgState& s, auto) { report(thr(1))(ctx, s); });

    for (std::uint32_t phase = 1; phase <= phases;) {
      const std::uint64_t t = thr(phase);
      bool pull = false;
      cl.round("draw", [&](auto& ctx, HgState&, auto inbox) {
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

      cl.round("respond", [&](auto& ctx, HgState& s, auto inbox) {
        if (inbox.empty()) return;
        std::vector<std::uint32_t> heavy;
        for (std::uint32_t k = 0; k < s.vertices.size(); ++k) {
          if (degree_of(s.vertices[k]) >= t) heavy.push_back(k);
        }
        ctx.charge(heavy.size());
        if (inbox[0].msg.tag == kPull) {
          for (std::uint32_t k : heavy) ctx.send(0, data_packet(s.vertices[k]));
          return;
        }
        std::vector<char> shipped(heavy.size(), 0);
        for (const auto& env : inbox) {
          const HgVertex& x = s.vertices[heavy[env.msg.b]];
          ctx.send(0, mpc::packet(kMember, env.msg.a, x.v, 2));
          if (!shipped[env.msg.b]) {
            shipped[env.msg.b] = 1;
            ctx.send(0, data_packet(x));
          }
        }
      });

      cl.round("add", [&](auto& ctx, HgState& s, auto inbox) {
        if (!ctx.is_central()) return;
        const DataIndex idx = index_data(inbox);
        std::vector<VertexId> fresh;
        std::uint64_t added = 0;
        if (pull) {
          for (const auto& [v, list] : idx) added += try_add(s, v, *list, 0, fresh);
        } else {
          std::vector<std::pair<std::uint64_t, VertexId>> members;
          for (const auto& env : inbox) {
            if (env.msg.tag == kMember) members.emplace_back(env.msg.a, static_cast<VertexId>(env.msg.b));
          }
          std::sort(members.begin(), members.end());
          ctx.charge(2 * members.size() + 2 * idx.size());
          for (std::size_t lo = 0; lo < members.size();) {
            std::size_t hi = lo;
            while (hi < members.size() && members[hi].first == members[lo].first) ++hi;
            for (std::size_t k = lo; k < hi; ++k) {
              const VertexId v = members[k].second;
              if (try_add(s, v, list_of(idx, v), t, fresh)) {
                ++added;
                break;
              }
            }
            lo = hi;
          }
        }
        stats.added.push_back(added);
        notify_covered(ctx, cfg, fresh);
      });

      const std::uint32_t next = pull ? phase + 1 : phase;
      maintain(cl, report(thr(next)));
      phase = next;
    }
    MisStats done = stats;
    auto out = final_sweep(cl.central(), done);
    return std::make_pair(std::move(out), std::move(done));
  };
  auto [vs, stats] = mpc::run_attempts(base, run.trace, attempt);
  run.vertices = std::move(vs);
  run.stats = std::move(stats);
  run.trace.metrics = stats_json(run.stats);
  return run;
}

MisRun mis_fast(const Graph& g, const mpc::ClusterConfig& base) {
  detail::require_positive_mu(base.mu);
  MisRun run;
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    const double n = static_cast<double>(std::max<std::size_t>(2, g.n()));
    const double alpha = cfg.mu / 8.0;
    const std::uint32_t classes = detail::phase_count(alpha);
    std::vector<std::uint64_t> lower(classes + 2, 1);
    for (std::uint32_t i = 1; i <= classes + 1; ++i) lower[i] = std::max<std::uint64_t>(1, mpc::ceil_pow(n, 1.0 - i * alpha));
    // class i (1-based) holds degrees in [lower[i], lower[i-1]); 0 = not alive
    auto class_of = [&](std::uint64_t d) -> std::uint32_t {
      if (d == 0) return 0;
      for (std::uint32_t i = 1; i <= classes; ++i) {
        if (d >= lower[i]) return i;
      }
      return classes;
    };
    const std::uint64_t gsize = std::max<std::uint64_t>(1, mpc::ceil_pow(n, cfg.mu / 2.0));
    const double edge_floor = std::pow(n, 1.0 + cfg.mu);

    HgCluster cl(cfg, run.trace);
    load(cl, g);
    MisStats stats;
    auto report = [&](auto& ctx, HgState& s) {
      Packet pk = mpc::packet(kCount, ctx.id(), 2);
      std::map<std::uint32_t, std::uint64_t> counts;
      for (const HgVertex& x : s.vertices) {
        const std::uint64_t d = degree_of(x);
        pk.b += d;
        if (const std::uint32_t c = class_of(d)) ++counts[c - 1];
      }
      // (class, count) pairs for the non-empty classes only
      for (const auto& [c, k] : counts) {
        pk.list.push_back(c);
        pk.list.push_back(k);
      }
      ctx.send(0, std::move(pk));
    };
    cl.round("class-count", [&](auto& ctx, HgState& s, auto) { report(ctx, s); });

    for (bool pull = false; !pull;) {
      cl.round("draw", [&](auto& ctx, HgState&, auto inbox) {
        if (!ctx.is_central()) return;
        std::map<std::uint32_t, std::vector<std::uint64_t>> per_class;
        std::uint64_t degree_sum = 0;
        std::vector<std::uint64_t> alive_on(ctx.machines(), 0);
        for (const auto& env : inbox) {
          degree_sum += env.msg.b;
          const auto& l = env.msg.list;
          for (std::size_t k = 0; k + 1 < l.size(); k += 2) {
            auto& row = per_class[static_cast<std::uint32_t>(l[k])];
            row.resize(ctx.machines(), 0);
            row[env.msg.a] = l[k + 1];
            alive_on[env.msg.a] += l[k + 1];
          }
        }
        ctx.charge(per_class.size() * ctx.machines() + ctx.machines());
        const std::uint64_t edges = degree_sum / 2;
        stats.edges.push_back(edges);
        if (static_cast<double>(edges) < edge_floor) {
          pull = true;
          for (std::uint32_t x = 0; x < ctx.machines(); ++x) {
            if (alive_on[x] > 0) ctx.send(x, mpc::packet(kPull, x));
          }
          return;
        }
        ++stats.iterations;
        std::uint64_t drawn = 0;
        for (const auto& [c, row] : per_class) {
          const std::uint32_t i = c + 1;
          const auto picks = detail::draw_groups(ctx.rng(), row, mpc::ceil_pow(n, (i + 1) * alpha), gsize);
          drawn += picks.size();
          for (const detail::Pick& pk : picks) {
            ctx.send(pk.machine, mpc::packet(kRequest, (std::uint64_t{i} << 32) | pk.group, pk.rank, 2));
          }
        }
        ctx.charge(3 * drawn);
      });

      cl.round("respond", [&](auto& ctx, HgState& s, auto inbox) {
        if (inbox.empty()) return;
        if (inbox[0].msg.tag == kPull) {
          for (const HgVertex& x : s.vertices) {
            if (degree_of(x) > 0) ctx.send(0, data_packet(x));
          }
          return;
        }
        std::vector<std::vector<std::uint32_t>> by_class(classes);
        for (std::uint32_t k = 0; k < s.vertices.size(); ++k) {
          if (const std::uint32_t c = class_of(degree_of(s.vertices[k]))) by_class[c - 1].push_back(k);
        }
        ctx.charge(s.vertices.size());
        std::vector<char> shipped(s.vertices.size(), 0);
        for (const auto& env : inbox) {
          const auto i = static_cast<std::uint32_t>(env.msg.a >> 32);
          const std::uint32_t k = by_class[i - 1][env.msg.b];
          const HgVertex& x = s.vertices[k];
          ctx.send(0, mpc::packet(kMember, env.msg.a, x.v, 2));
          if (!shipped[k]) {
            shipped[k] = 1;
            ctx.send(0, data_packet(x));
          }
        }
      });

      cl.round("add", [&](auto& ctx, HgState& s, auto inbox) {
        if (!ctx.is_central()) return;
        const DataIndex idx = index_data(inbox);
        std::vector<VertexId> fresh;
        std::uint64_t added = 0;
        if (pull) {
          for (const auto& [v, list] : idx) added += try_add(s, v, *list, 0, fresh);
        } else {
          std::vector<std::pair<std::uint64_t, VertexId>> members;
          for (const auto& env : inbox) {
            if (env.msg.tag == kMember) members.emplace_back(env.msg.a, static_cast<VertexId>(env.msg.b));
          }
          std::sort(members.begin(), members.end());
          ctx.charge(2 * members.size() + 2 * idx.size());
          for (std::size_t lo = 0; lo < members.size();) {
            std::size_t hi = lo;
            while (hi < members.size() && members[hi].first == members[lo].first) ++hi;
            const auto i = static_cast<std::uint32_t>(members[lo].first >> 32);
            for (std::size_t k = lo; k < hi; ++k) {
              const VertexId v = members[k].second;
              if (try_add(s, v, list_of(idx, v), lower[i + 1], fresh)) {
                ++added;
                break;
              }
            }
            lo = hi;
          }
        }
        stats.added.push_back(added);
        notify_covered(ctx, cfg, fresh);
      });

      maintain(cl, report);
    }
    MisStats done = stats;
    auto out = final_sweep(cl.central(), done);
    return std::make_pair(std::move(out), std::move(done));
  };
  auto [vs, stats] = mpc::run_attempts(base, run.trace, attempt);
  run.vertices = std::move(vs);
  run.stats = std::move(stats);
  run.trace.metrics = stats_json(run.stats);
  return run;
}

Relabel relabel_active(std::span<const std::uint8_t> active) {
  Relabel r;
  r.sigma.assign(active.size(), 0);
  for (std::uint8_t a : active) r.k += a != 0;
  std::uint32_t next_active = 1;
  std::uint32_t next_inactive = r.k + 1;
  for (std::size_t v = 0; v < active.size(); ++v) r.sigma[v] = active[v] ? next_active++ : next_inactive++;
  return r;
}

mpc::ConfigRequest mis_request(const Graph& g, double mu) {
  mpc::ConfigRequest req;
  req.n = std::max<std::size_t>(2, g.n());
  req.size = std::max<std::size_t>(1, g.m());
  req.mu = mu;
  return req;
}

}  // namespace lrmr
