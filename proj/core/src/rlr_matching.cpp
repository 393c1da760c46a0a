#include <algorithm>
#include <string>

#include "lrmr/mpc/cluster.hpp"
#include "lrmr/mpc/packet.hpp"
#include "lrmr/oracles.hpp"
#include "lrmr/rlr_matching.hpp"

namespace lrmr {

namespace {

using mpc::Packet;

constexpr std::uint64_t kVertexSalt = 0x61;
constexpr std::uint64_t kEdgeSalt = 0x62;

enum Tag : std::uint32_t { kAliveCount, kSampled, kDelta, kPushed, kEdgeDelta, kCount };

struct EdgeRec {
  EdgeId id;
  VertexId u;
  VertexId v;
  /// w - phi(u) - phi(v) as of the last update.
  Rational r;
};

struct MatchState {
  std::vector<EdgeRec> edges;
  std::vector<std::pair<VertexId, std::span<const EdgeId>>> vertices;
  std::uint64_t alive_global = 0;
  std::vector<Rational> phi;
  /// Stack entries carry (edge, u, v).
  std::vector<EdgeId> stack;

  std::uint64_t words() const {
    std::uint64_t w = 1 + 4 * edges.size() + phi.size() + 3 * stack.size();
    for (const auto& v : vertices) w += 1 + v.second.size();
    return w;
  }
};

}  // namespace

MatchingRun approx_max_matching(const Graph& g, const mpc::ClusterConfig& base, const MatchingOptions& opts) {
  MatchingRun run;
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    mpc::Cluster<MatchState, Packet> cl(cfg, run.trace);
    cl.central().phi.assign(g.n(), Rational(0));
    for (EdgeId e = 0; e < g.m(); ++e) {
      const Edge& ed = g.edge(e);
      cl.state(mpc::home_of(cfg, kEdgeSalt, e)).edges.push_back({e, ed.u, ed.v, ed.w});
    }
    for (VertexId v = 0; v < g.n(); ++v) cl.state(mpc::home_of(cfg, kVertexSalt, v)).vertices.emplace_back(v, g.incident(v));
    // zero-weight edges are never alive
    for (MatchState& s : cl.states()) std::erase_if(s.edges, [](const EdgeRec& e) { return e.r.sign() <= 0; });
    std::uint64_t alive = 0;
    for (MatchState& s : cl.states()) alive += s.edges.size();
    for (MatchState& s : cl.states()) s.alive_global = alive;
    cl.check_resident();

    const double eta = static_cast<double>(cfg.eta);
    const double cap = opts.fail_multiplier * eta;
    MatchingStats stats;
    std::vector<std::uint32_t> degree(g.n());
    while (alive > 0) {
      ++stats.iterations;
      stats.alive.push_back(alive);
      std::fill(degree.begin(), degree.end(), 0);
      for (const MatchState& s : cl.states()) {
        for (const EdgeRec& e : s.edges) {
          ++degree[e.u];
          ++degree[e.v];
        }
      }
      stats.max_degree.push_back(*std::max_element(degree.begin(), degree.end()));
      stats.full.push_back(static_cast<double>(alive) < 4.0 * eta);

      cl.round("sample", [&](auto& ctx, MatchState& s, auto inbox) {
        for (const auto& env : inbox) s.alive_global = env.msg.a;
        const double n_alive = static_cast<double>(s.alive_global);
        const bool full = n_alive < 4.0 * eta;
        const double p = full ? 1.0 : std::min(1.0, eta / n_alive);
        for (const EdgeRec& e : s.edges) {
          if (full || ctx.rng().bernoulli(p)) {
            Packet pk = mpc::packet(kSampled, e.id, (std::uint64_t{e.u} << 32) | e.v, 4);
            pk.q = e.r;
            ctx.send(0, std::move(pk));
          }
        }
      });

      cl.round("local-ratio", [&](auto& ctx, MatchState& s, auto inbox) {
        if (!ctx.is_central()) return;
        stats.sampled.push_back(inbox.size());
        if (2.0 * static_cast<double>(inbox.size()) > cap) {
          ctx.declare_failure("sample lists hold " + std::to_string(2 * inbox.size()) + " edges");
          return;
        }
        struct Cand {
          EdgeId e;
          VertexId u, v;
          const Rational* r;
        };
        std::vector<Cand> cands;
        cands.reserve(inbox.size());
        for (const auto& env : inbox) {
          cands.push_back({static_cast<EdgeId>(env.msg.a), static_cast<VertexId>(env.msg.b >> 32),
                           static_cast<VertexId>(env.msg.b & 0xffffffffu), &env.msg.q});
        }
        // per-vertex sample lists E'_v as index ranges
        std::vector<std::pair<VertexId, std::uint32_t>> by_vertex;
        by_vertex.reserve(2 * cands.size());
        for (std::uint32_t k = 0; k < cands.size(); ++k) {
          by_vertex.emplace_back(cands[k].u, k);
          by_vertex.emplace_back(cands[k].v, k);
        }
        std::sort(by_vertex.begin(), by_vertex.end());
        // one index per list entry, the pushed flags, and the per-vertex increments
        ctx.charge(by_vertex.size() + cands.size() + 2 * g.n());

        std::vector<Rational> increment(g.n());
        std::vector<char> touched(g.n(), 0);
        std::vector<char> pushed(cands.size(), 0);
        std::vector<VertexId> touched_list;
        for (std::size_t lo = 0; lo < by_vertex.size();) {
          std::size_t hi = lo;
          while (hi < by_vertex.size() && by_vertex[hi].first == by_vertex[lo].first) ++hi;
          int best = -1;
          Rational best_w;
          for (std::size_t t = lo; t < hi; ++t) {
            const std::uint32_t k = by_vertex[t].second;
            if (pushed[k]) continue;
            const Cand& c = cands[k];
            Rational mod = *c.r - increment[c.u] - increment[c.v];
            if (mod.sign() <= 0) continue;
            if (best < 0 || mod > best_w || (mod == best_w && c.e < cands[static_cast<std::size_t>(best)].e)) {
              best = static_cast<int>(k);
              best_w = std::move(mod);
            }
          }
          if (best >= 0) {
            const Cand& c = cands[static_cast<std::size_t>(best)];
            pushed[static_cast<std::size_t>(best)] = 1;
            for (VertexId x : {c.u, c.v}) {
              increment[x] += best_w;
              s.phi[x] += best_w;
              if (!touched[x]) {
                touched[x] = 1;
                touched_list.push_back(x);
              }
            }
            s.stack.push_back(c.e);
            ctx.send(mpc::home_of(cfg, kEdgeSalt, c.e), mpc::packet(kPushed, c.e));
          }
          lo = hi;
        }
        std::sort(touched_list.begin(), touched_list.end());
        for (VertexId x : touched_list) {
          Packet pk = mpc::packet(kDelta, x, 2);
          pk.q = increment[x];
          ctx.send(mpc::home_of(cfg, kVertexSalt, x), std::move(pk));
        }
      });

      cl.round("forward-delta", [&](auto& ctx, MatchState& s, auto inbox) {
        std::vector<EdgeId> gone;
        for (const auto& env : inbox) {
          if (env.msg.tag == kPushed) {
            gone.push_back(static_cast<EdgeId>(env.msg.a));
            continue;
          }
          const auto v = static_cast<VertexId>(env.msg.a);
          auto it = std::lower_bound(s.vertices.begin(), s.vertices.end(), v,
                                     [](const auto& rec, VertexId x) { return rec.first < x; });
          for (EdgeId e : it->second) {
            Packet pk = mpc::packet(kEdgeDelta, e, 2);
            pk.q = env.msg.q;
            ctx.send(mpc::home_of(cfg, kEdgeSalt, e), std::move(pk));
          }
        }
        std::sort(gone.begin(), gone.end());
        std::erase_if(s.edges, [&](const EdgeRec& e) { return std::binary_search(gone.begin(), gone.end(), e.id); });
      });

      cl.round("apply-delta", [&](auto& ctx, MatchState& s, auto inbox) {
        for (const auto& env : inbox) {
          const auto e = static_cast<EdgeId>(env.msg.a);
          auto it = std::lower_bound(s.edges.begin(), s.edges.end(), e, [](const EdgeRec& r, EdgeId x) { return r.id < x; });
          if (it != s.edges.end() && it->id == e) it->r -= env.msg.q;
        }
        std::erase_if(s.edges, [](const EdgeRec& e) { return e.r.sign() <= 0; });
        ctx.send(0, mpc::packet(kCount, ctx.id(), s.edges.size(), 2));
      });

      cl.round("alive-count", [&](auto& ctx, MatchState&, auto inbox) {
        if (!ctx.is_central()) return;
        std::uint64_t total = 0;
        for (const auto& env : inbox) total += env.msg.b;
        alive = total;
        if (total == 0) return;
        for (std::uint32_t x = 0; x < ctx.machines(); ++x) ctx.send(x, mpc::packet(kAliveCount, total));
      });
    }
    stats.stack = cl.central().stack;
    stats.phi = cl.central().phi;
    return stats;
  };
  run.stats = mpc::run_attempts(base, run.trace, attempt);
  run.matching = unwind_stack(g, run.stats.stack);
  run.weight = g.weight_of(run.matching.edges);
  run.trace.metrics = {{"iterations", run.stats.iterations},
                       {"alive", run.stats.alive},
                       {"max_degree", run.stats.max_degree},
                       {"sampled", run.stats.sampled},
                       {"pushed", run.stats.stack.size()}};
  return run;
}

mpc::ConfigRequest matching_request(const Graph& g, double mu) {
  mpc::ConfigRequest req;
  req.n = std::max<std::size_t>(2, g.n());
  req.size = std::max<std::size_t>(1, g.m());
  req.mu = mu;
  return req;
}

}  // namespace lrmr
