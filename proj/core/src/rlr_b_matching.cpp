#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lrmr/mpc/cluster.hpp"
#include "lrmr/mpc/packet.hpp"
#include "lrmr/oracles.hpp"
#include "lrmr/rlr_matching.hpp"

namespace lrmr {

namespace {

using mpc::Packet;

constexpr std::uint64_t kVertexSalt = 0x71;

struct BVertex {
  VertexId v;
  /// Alive incident edges, ascending.
  std::vector<EdgeId> alive;
};

struct BState {
  std::vector<BVertex> vertices;
  std::vector<Rational> phi;
  std::uint64_t alive_global = 0;
  std::vector<EdgeId> stack;
  std::unordered_set<EdgeId> pushed;

  std::uint64_t words() const {
    // an alive entry carries (edge, other endpoint, weight)
    std::uint64_t w = 1 + phi.size() + 3 * stack.size();
    for (const BVertex& v : vertices) w += 1 + 3 * v.alive.size();
    return w;
  }
};

struct PhiUpdate {
  std::vector<std::pair<VertexId, Rational>> phi;
  std::vector<EdgeId> pushed;
};

bool kill_rule(const Rational& w, const Rational& phi_sum, const Rational& one_plus_eps) {
  return w <= one_plus_eps * phi_sum;
}

}  // namespace

double log_inverse_delta(const Rational& epsilon) {
  const double eps = epsilon.to_double();
  return std::log((1.0 + eps) / eps);
}

MatchingRun approx_b_matching(const Graph& g, std::span<const std::uint32_t> b_in, const Rational& epsilon,
                              const mpc::ClusterConfig& base) {
  if (epsilon.sign() <= 0) throw InvalidEpsilon("epsilon must be positive");
  std::vector<std::uint32_t> b(b_in.begin(), b_in.end());
  if (b.empty()) b.assign(g.n(), 1);
  if (b.size() != g.n()) throw InvalidInput("capacity count differs from vertex count");
  for (std::uint32_t x : b) {
    if (x < 1) throw InvalidInput("capacities must be at least 1");
  }
  const std::uint32_t b_max = g.n() == 0 ? 1 : *std::max_element(b.begin(), b.end());
  const Rational one_plus_eps = Rational(1) + epsilon;
  const double ln_inv_delta = log_inverse_delta(epsilon);

  MatchingRun run;
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    const double n = static_cast<double>(std::max<std::uint64_t>(2, cfg.n));
    const double n_mu = std::pow(n, cfg.mu);
    const double full_below = 2.0 * b_max * ln_inv_delta * std::pow(n, 1.0 + cfg.mu);

    mpc::Cluster<BState, Packet> cl(cfg, run.trace);
    for (BState& s : cl.states()) s.phi.assign(g.n(), Rational(0));
    for (VertexId v = 0; v < g.n(); ++v) {
      BVertex rec{v, {}};
      for (EdgeId e : g.incident(v)) {
        if (g.edge(e).w.sign() > 0) rec.alive.push_back(e);
      }
      std::sort(rec.alive.begin(), rec.alive.end());
      cl.state(mpc::home_of(cfg, kVertexSalt, v)).vertices.push_back(std::move(rec));
    }
    std::uint64_t alive = 0;
    for (EdgeId e = 0; e < g.m(); ++e) alive += g.edge(e).w.sign() > 0;
    for (BState& s : cl.states()) s.alive_global = alive;
    cl.check_resident();

    MatchingStats stats;
    while (alive > 0) {
      ++stats.iterations;
      stats.alive.push_back(alive);
      std::uint64_t dmax = 0;
      for (const BState& s : cl.states()) {
        for (const BVertex& v : s.vertices) dmax = std::max<std::uint64_t>(dmax, v.alive.size());
      }
      stats.max_degree.push_back(dmax);
      const bool full_iter = static_cast<double>(alive) < full_below;
      stats.full.push_back(full_iter);

      cl.round("sample", [&](auto& ctx, BState& s, auto) {
        const bool full = static_cast<double>(s.alive_global) < full_below;
        for (const BVertex& rec : s.vertices) {
          auto ship = [&](EdgeId e) {
            Packet pk = mpc::packet(0, rec.v, e, 4);
            pk.c = g.other(e, rec.v);
            pk.q = g.edge(e).w;
            ctx.send(0, std::move(pk));
          };
          if (full) {
            for (EdgeId e : rec.alive) {
              if (rec.v < g.other(e, rec.v)) ship(e);
            }
            continue;
          }
          const auto want = static_cast<std::uint64_t>(std::ceil(b[rec.v] * ln_inv_delta * n_mu));
          if (want >= rec.alive.size()) {
            for (EdgeId e : rec.alive) ship(e);
          } else {
            for (std::uint64_t idx : ctx.rng().sample_distinct(rec.alive.size(), want)) ship(rec.alive[idx]);
          }
        }
      });

      PhiUpdate update;
      cl.round("local-ratio", [&](auto& ctx, BState& s, auto inbox) {
        if (!ctx.is_central()) return;
        stats.sampled.push_back(inbox.size());
        ctx.charge(inbox.size() + 2 * g.n());
        std::vector<char> changed(g.n(), 0);
        // inbox is ordered by (sender, owner vertex, edge); regroup by owner
        std::vector<const Packet*> msgs;
        msgs.reserve(inbox.size());
        for (const auto& env : inbox) msgs.push_back(&env.msg);
        std::stable_sort(msgs.begin(), msgs.end(), [](const Packet* x, const Packet* y) {
          return x->a != y->a ? x->a < y->a : x->b < y->b;
        });
        for (std::size_t lo = 0; lo < msgs.size();) {
          std::size_t hi = lo;
          while (hi < msgs.size() && msgs[hi]->a == msgs[lo]->a) ++hi;
          const auto v = static_cast<VertexId>(msgs[lo]->a);
          std::vector<const Packet*> pool(msgs.begin() + static_cast<std::ptrdiff_t>(lo),
                                          msgs.begin() + static_cast<std::ptrdiff_t>(hi));
          const std::uint64_t cap =
              full_iter ? ~std::uint64_t{0} : static_cast<std::uint64_t>(std::ceil(b[v] * ln_inv_delta));
          std::uint64_t taken = 0;
          while (taken < cap && !pool.empty()) {
            std::size_t best = 0;
            Rational best_w;
            for (std::size_t t = 0; t < pool.size(); ++t) {
              const Packet& pk = *pool[t];
              Rational mod = pk.q - s.phi[v] - s.phi[pk.c];
              if (t == 0 || mod > best_w || (mod == best_w && pk.b < pool[best]->b)) {
                best = t;
                best_w = std::move(mod);
              }
            }
            const Packet& pk = *pool[best];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
            const auto e = static_cast<EdgeId>(pk.b);
            const auto u = static_cast<VertexId>(pk.c);
            if (s.pushed.count(e) || kill_rule(pk.q, s.phi[v] + s.phi[u], one_plus_eps)) continue;
            s.pushed.insert(e);
            s.stack.push_back(e);
            update.pushed.push_back(e);
            s.phi[v] += best_w / Rational(b[v]);
            s.phi[u] += best_w / Rational(b[u]);
            changed[v] = changed[u] = 1;
            ++taken;
          }
          lo = hi;
        }
        for (VertexId x = 0; x < g.n(); ++x) {
          if (changed[x]) update.phi.emplace_back(x, s.phi[x]);
        }
        std::sort(update.pushed.begin(), update.pushed.end());
      });

      cl.broadcast("phi-update", update, 1 + 2 * update.phi.size() + update.pushed.size(),
                   [&](std::uint32_t, BState& s, const PhiUpdate& up) {
                     for (const auto& [x, q] : up.phi) s.phi[x] = q;
                     for (BVertex& rec : s.vertices) {
                       std::erase_if(rec.alive, [&](EdgeId e) {
                         if (std::binary_search(up.pushed.begin(), up.pushed.end(), e)) return true;
                         const Edge& ed = g.edge(e);
                         return kill_rule(ed.w, s.phi[ed.u] + s.phi[ed.v], one_plus_eps);
                       });
                     }
                   });

      alive = cl.template aggregate<std::uint64_t>(
          "alive-count",
          [&](std::uint32_t, BState& s, Rng&) {
            std::uint64_t c = 0;
            for (const BVertex& rec : s.vertices) {
              for (EdgeId e : rec.alive) c += rec.v < g.other(e, rec.v);
            }
            return c;
          },
          [](std::uint64_t x, std::uint64_t y) { return x + y; }, [](std::uint64_t) { return std::uint64_t{1}; });
      if (alive > 0) {
        cl.broadcast("alive-count", alive, 1, [](std::uint32_t, BState& s, const std::uint64_t& a) { s.alive_global = a; });
      }
    }
    stats.stack = cl.central().stack;
    stats.phi = cl.central().phi;
    return stats;
  };
  run.stats = mpc::run_attempts(base, run.trace, attempt);
  run.matching = unwind_stack(g, run.stats.stack, b);
  run.weight = g.weight_of(run.matching.edges);
  run.trace.metrics = {{"iterations", run.stats.iterations},
                       {"alive", run.stats.alive},
                       {"max_degree", run.stats.max_degree},
                       {"sampled", run.stats.sampled},
                       {"pushed", run.stats.stack.size()}};
  return run;
}

mpc::ConfigRequest b_matching_request(const Graph& g, std::span<const std::uint32_t> b, const Rational& epsilon,
                                      double mu) {
  if (epsilon.sign() <= 0) throw InvalidEpsilon("epsilon must be positive");
  mpc::ConfigRequest req;
  req.n = std::max<std::size_t>(2, g.n());
  req.size = std::max<std::size_t>(1, g.m());
  req.mu = mu;
  const std::uint32_t b_max = b.empty() ? 1 : *std::max_element(b.begin(), b.end());
  req.space_factor = std::ceil(b_max * log_inverse_delta(epsilon));
  return req;
}

}  // namespace lrmr
