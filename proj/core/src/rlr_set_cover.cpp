#include <algorithm>
#include <string>

#include "lrmr/mpc/cluster.hpp"
#include "lrmr/mpc/packet.hpp"
#include "lrmr/rlr_set_cover.hpp"

namespace lrmr {

namespace {

using mpc::Packet;

constexpr std::uint64_t kElementSalt = 0x51;
constexpr std::uint64_t kVertexSalt = 0x52;
constexpr std::uint64_t kEdgeSalt = 0x53;

struct ElementRec {
  ElementId j;
  std::span<const SetId> sets;
};

struct ScfState {
  std::vector<ElementRec> elems;
  std::uint64_t alive_global = 0;
  std::vector<Rational> residual;
  std::vector<char> in_cover;
  std::vector<SetId> delta;

  std::uint64_t words() const {
    std::uint64_t w = 1 + residual.size() + in_cover.size() + delta.size();
    for (const ElementRec& e : elems) w += 1 + e.sets.size();
    return w;
  }
};

nlohmann::json stats_json(const ScfStats& s) {
  return {{"iterations", s.iterations}, {"alive", s.alive}, {"p", s.p}, {"sampled", s.sampled}};
}

double sample_probability(double two_eta, std::uint64_t alive) {
  return alive == 0 ? 1.0 : std::min(1.0, two_eta / static_cast<double>(alive));
}

std::string too_many(std::uint64_t got, double cap) {
  return "sampled " + std::to_string(got) + " elements, limit " + std::to_string(static_cast<std::uint64_t>(cap));
}

/// Local ratio over a batch, ascending ids. Newly zeroed sets go to `fresh`.
template <class SetsOf>
void local_ratio_batch(std::vector<std::pair<std::uint64_t, SetsOf>>& batch, std::vector<Rational>& residual,
                       std::vector<char>& in_cover, std::vector<SetId>& fresh, ScfStats& stats) {
  std::sort(batch.begin(), batch.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [j, sets] : batch) {
    stats.order.push_back(static_cast<ElementId>(j));
    bool positive = true;
    for (SetId i : sets) positive = positive && residual[i].sign() > 0;
    if (!positive) continue;
    Rational eps = residual[sets[0]];
    for (SetId i : sets) eps = std::min(eps, residual[i]);
    for (SetId i : sets) {
      residual[i] -= eps;
      if (residual[i].sign() == 0 && !in_cover[i]) {
        in_cover[i] = 1;
        fresh.push_back(i);
      }
    }
  }
}

Cover collect(const std::vector<char>& in_cover) {
  Cover c;
  for (SetId i = 0; i < in_cover.size(); ++i) {
    if (in_cover[i]) c.sets.push_back(i);
  }
  return c;
}

}  // namespace

CoverRun approx_sc_f(const SetCoverInstance& inst, const mpc::ClusterConfig& base, const ScfOptions& opts) {
  inst.require_coverable();
  CoverRun run;
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    mpc::Cluster<ScfState, Packet> cl(cfg, run.trace);
    cl.central().residual = inst.weights();
    cl.central().in_cover.assign(inst.n(), 0);
    for (ElementId j = 0; j < inst.m(); ++j) cl.state(mpc::home_of(cfg, kElementSalt, j)).elems.push_back({j, inst.dual(j)});
    for (ScfState& s : cl.states()) s.alive_global = inst.m();
    cl.check_resident();

    const double two_eta = 2.0 * static_cast<double>(cfg.eta);
    const double cap = opts.fail_multiplier * two_eta;
    ScfStats stats;
    std::uint64_t alive = inst.m();
    while (alive > 0) {
      ++stats.iterations;
      stats.alive.push_back(alive);
      stats.p.push_back(sample_probability(two_eta, alive));

      cl.round("sample", [&](auto& ctx, ScfState& s, auto) {
        const double p = sample_probability(two_eta, s.alive_global);
        for (const ElementRec& e : s.elems) {
          if (p >= 1.0 || ctx.rng().bernoulli(p)) {
            Packet pk = mpc::packet(0, e.j);
            pk.list.assign(e.sets.begin(), e.sets.end());
            ctx.send(0, std::move(pk));
          }
        }
      });

      cl.round("local-ratio", [&](auto& ctx, ScfState& s, auto inbox) {
        if (!ctx.is_central()) return;
        stats.sampled.push_back(inbox.size());
        if (static_cast<double>(inbox.size()) > cap) {
          ctx.declare_failure(too_many(inbox.size(), cap));
          return;
        }
        std::vector<std::pair<std::uint64_t, std::span<const std::uint32_t>>> batch;
        batch.reserve(inbox.size());
        for (const auto& env : inbox) batch.emplace_back(env.msg.a, std::span<const std::uint32_t>(env.msg.list));
        ctx.charge(batch.size());
        local_ratio_batch(batch, s.residual, s.in_cover, s.delta, stats);
      });

      std::vector<SetId> delta = std::move(cl.central().delta);
      cl.central().delta.clear();
      std::sort(delta.begin(), delta.end());
      cl.broadcast("cover-delta", delta, 1 + delta.size(), [](std::uint32_t, ScfState& s, const std::vector<SetId>& d) {
        if (d.empty()) return;
        std::erase_if(s.elems, [&](const ElementRec& e) {
          return std::any_of(e.sets.begin(), e.sets.end(), [&](SetId i) { return std::binary_search(d.begin(), d.end(), i); });
        });
      });

      alive = cl.template aggregate<std::uint64_t>(
          "alive-count", [](std::uint32_t, ScfState& s, Rng&) { return static_cast<std::uint64_t>(s.elems.size()); },
          [](std::uint64_t x, std::uint64_t y) { return x + y; }, [](std::uint64_t) { return std::uint64_t{1}; });
      if (alive > 0) {
        cl.broadcast("alive-count", alive, 1, [](std::uint32_t, ScfState& s, const std::uint64_t& a) { s.alive_global = a; });
      }
    }
    return std::make_pair(collect(cl.central().in_cover), std::move(stats));
  };
  auto [cover, stats] = mpc::run_attempts(base, run.trace, attempt);
  run.cover = std::move(cover);
  run.stats = std::move(stats);
  run.trace.metrics = stats_json(run.stats);
  return run;
}

namespace {

enum VcTag : std::uint32_t { kAliveCount, kSampled, kZeroed, kDead, kCount };

struct VcState {
  /// (edge id, u, v) held at edge homes.
  std::vector<std::array<std::uint32_t, 3>> edges;
  /// Vertex homes: vertex id and its incident edge ids.
  std::vector<std::pair<VertexId, std::span<const EdgeId>>> vertices;
  std::uint64_t alive_global = 0;
  std::vector<Rational> residual;
  std::vector<char> in_cover;

  std::uint64_t words() const {
    std::uint64_t w = 1 + 3 * edges.size() + residual.size() + in_cover.size();
    for (const auto& v : vertices) w += 1 + v.second.size();
    return w;
  }
};

}  // namespace

CoverRun vertex_cover_2approx(const Graph& g, const std::vector<Rational>& vertex_weights,
                              const mpc::ClusterConfig& base, const ScfOptions& opts) {
  std::vector<Rational> weights = vertex_weights;
  if (weights.empty()) weights.assign(g.n(), Rational(1));
  if (weights.size() != g.n()) throw InvalidInput("vertex weight count differs from vertex count");
  for (const Rational& w : weights) {
    if (w.sign() <= 0) throw InvalidInput("vertex weights must be positive");
  }
  CoverRun run;
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    mpc::Cluster<VcState, Packet> cl(cfg, run.trace);
    cl.central().residual = weights;
    cl.central().in_cover.assign(g.n(), 0);
    for (EdgeId e = 0; e < g.m(); ++e) {
      cl.state(mpc::home_of(cfg, kEdgeSalt, e)).edges.push_back({e, g.edge(e).u, g.edge(e).v});
    }
    for (VertexId v = 0; v < g.n(); ++v) cl.state(mpc::home_of(cfg, kVertexSalt, v)).vertices.emplace_back(v, g.incident(v));
    for (VcState& s : cl.states()) s.alive_global = g.m();
    cl.check_resident();

    const double two_eta = 2.0 * static_cast<double>(cfg.eta);
    const double cap = opts.fail_multiplier * two_eta;
    ScfStats stats;
    std::uint64_t alive = g.m();
    while (alive > 0) {
      ++stats.iterations;
      stats.alive.push_back(alive);
      stats.p.push_back(sample_probability(two_eta, alive));

      cl.round("sample", [&](auto& ctx, VcState& s, auto inbox) {
        for (const auto& env : inbox) {
          if (env.msg.tag == kAliveCount) s.alive_global = env.msg.a;
        }
        const double p = sample_probability(two_eta, s.alive_global);
        for (const auto& [e, u, v] : s.edges) {
          if (p >= 1.0 || ctx.rng().bernoulli(p)) ctx.send(0, mpc::packet(kSampled, e, (std::uint64_t{u} << 32) | v, 3));
        }
      });

      cl.round("local-ratio", [&](auto& ctx, VcState& s, auto inbox) {
        if (!ctx.is_central()) return;
        stats.sampled.push_back(inbox.size());
        if (static_cast<double>(inbox.size()) > cap) {
          ctx.declare_failure(too_many(inbox.size(), cap));
          return;
        }
        std::vector<std::pair<std::uint64_t, std::array<SetId, 2>>> batch;
        batch.reserve(inbox.size());
        for (const auto& env : inbox) {
          batch.push_back({env.msg.a, {static_cast<SetId>(env.msg.b >> 32), static_cast<SetId>(env.msg.b & 0xffffffffu)}});
        }
        ctx.charge(batch.size());
        std::vector<SetId> fresh;
        local_ratio_batch(batch, s.residual, s.in_cover, fresh, stats);
        for (SetId v : fresh) ctx.send(mpc::home_of(cfg, kVertexSalt, v), mpc::packet(kZeroed, v));
      });

      cl.round("notify-edges", [&](auto& ctx, VcState& s, auto inbox) {
        for (const auto& env : inbox) {
          const auto v = static_cast<VertexId>(env.msg.a);
          auto it = std::lower_bound(s.vertices.begin(), s.vertices.end(), v,
                                     [](const auto& rec, VertexId x) { return rec.first < x; });
          for (EdgeId e : it->second) ctx.send(mpc::home_of(cfg, kEdgeSalt, e), mpc::packet(kDead, e));
        }
      });

      cl.round("drop-edges", [&](auto& ctx, VcState& s, auto inbox) {
        std::vector<EdgeId> dead;
        for (const auto& env : inbox) dead.push_back(static_cast<EdgeId>(env.msg.a));
        std::sort(dead.begin(), dead.end());
        ctx.charge(dead.size());
        std::erase_if(s.edges, [&](const auto& rec) { return std::binary_search(dead.begin(), dead.end(), rec[0]); });
        ctx.send(0, mpc::packet(kCount, ctx.id(), s.edges.size(), 2));
      });

      cl.round("alive-count", [&](auto& ctx, VcState&, auto inbox) {
        if (!ctx.is_central()) return;
        std::uint64_t total = 0;
        for (const auto& env : inbox) total += env.msg.b;
        alive = total;
        if (total == 0) return;
        for (std::uint32_t x = 0; x < ctx.machines(); ++x) ctx.send(x, mpc::packet(kAliveCount, total));
      });
    }
    return std::make_pair(collect(cl.central().in_cover), std::move(stats));
  };
  auto [cover, stats] = mpc::run_attempts(base, run.trace, attempt);
  run.cover = std::move(cover);
  run.stats = std::move(stats);
  run.trace.metrics = stats_json(run.stats);
  return run;
}

mpc::ConfigRequest sc_f_request(const SetCoverInstance& inst, double mu) {
  mpc::ConfigRequest req;
  req.n = std::max<std::size_t>(2, inst.n());
  req.size = std::max<std::size_t>(1, inst.m());
  req.mu = mu;
  req.space_factor = static_cast<double>(std::max<std::size_t>(1, inst.f()));
  return req;
}

mpc::ConfigRequest vc_request(const Graph& g, double mu) {
  mpc::ConfigRequest req;
  req.n = std::max<std::size_t>(2, g.n());
  req.size = std::max<std::size_t>(1, g.m());
  req.mu = mu;
  req.space_factor = 2.0;
  return req;
}

}  // namespace lrmr
