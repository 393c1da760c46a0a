#include <algorithm>
#include <cmath>
#include <optional>

#include "lrmr/mpc/cluster.hpp"
#include "lrmr/mpc/packet.hpp"
#include "lrmr/parallel_set_cover.hpp"

namespace lrmr {

namespace {

using mpc::Packet;

constexpr std::uint64_t kSetSalt = 0x71;

enum Tag : std::uint32_t { kData };

struct SetRec {
  SetId i;
  std::span<const ElementId> elems;
  Rational w;
  std::uint64_t uncovered = 0;
  /// Size class, 0 when not profitable or fully covered.
  std::uint32_t cls = 0;
  /// Sampled (class, group) pairs.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> groups;
};

struct PscState {
  std::vector<SetRec> sets;
  std::vector<char> covered;
  Rational L;
  std::vector<std::uint64_t> class_size;
  // central only
  std::vector<SetId> chosen;

  std::uint64_t words() const {
    std::uint64_t w = 2 + covered.size() + class_size.size() + chosen.size();
    for (const SetRec& s : sets) w += 4 + s.elems.size() + 2 * s.groups.size();
    return w;
  }
};

/// Class boundaries and group counts, classes numbered 1..P.
struct Params {
  double md = 2.0;
  std::uint32_t classes = 1;
  std::vector<std::uint64_t> lower;
  std::vector<std::uint64_t> groups;
  std::vector<std::uint64_t> need;
  double target = 1.0;
  double cap = 4.0;

  Params(std::size_t m, double mu) {
    md = static_cast<double>(std::max<std::size_t>(2, m));
    const double alpha = mu / 8.0;
    classes = static_cast<std::uint32_t>(std::ceil(8.0 / mu - 1e-9));
    lower.assign(classes + 1, 1);
    groups.assign(classes + 1, 1);
    need.assign(classes + 1, 1);
    for (std::uint32_t i = 1; i <= classes; ++i) {
      lower[i] = std::max<std::uint64_t>(1, mpc::ceil_pow(md, std::max(0.0, 1.0 - i * alpha)));
      groups[i] = static_cast<std::uint64_t>(std::ceil(2.0 * std::pow(md, (i + 1) * alpha) - 1e-9));
      need[i] = std::max<std::uint64_t>(1, mpc::ceil_pow(md, 1.0 - (i + 1) * alpha));
    }
    target = std::pow(md, mu / 2.0);
    cap = 4.0 * target;
  }

  std::uint32_t class_of(std::uint64_t u) const {
    for (std::uint32_t i = 1; i <= classes; ++i) {
      if (u >= lower[i]) return i;
    }
    return classes;
  }
};

struct Summary {
  std::vector<std::uint64_t> counts;
  std::uint64_t phi = 0;
  std::optional<Rational> best;

  bool operator==(const Summary&) const = default;
};

Summary merge(const Summary& x, const Summary& y) {
  Summary z = x;
  for (std::size_t i = 0; i < z.counts.size(); ++i) z.counts[i] += y.counts[i];
  z.phi += y.phi;
  if (y.best && (!z.best || *y.best > *z.best)) z.best = y.best;
  return z;
}

using SizeMap = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

SizeMap merge_sizes(const SizeMap& x, const SizeMap& y) {
  SizeMap z;
  z.reserve(x.size() + y.size());
  std::size_t a = 0, b = 0;
  while (a < x.size() || b < y.size()) {
    if (b == y.size() || (a < x.size() && x[a].first < y[b].first)) {
      z.push_back(x[a++]);
    } else if (a == x.size() || y[b].first < x[a].first) {
      z.push_back(y[b++]);
    } else {
      z.emplace_back(x[a].first, x[a].second + y[b].second);
      ++a;
      ++b;
    }
  }
  return z;
}

std::uint64_t group_key(std::uint32_t cls, std::uint32_t group) { return (std::uint64_t{cls} << 32) | group; }

void require_epsilon(const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw InvalidEpsilon("epsilon must be positive");
}

bool profitable(std::uint64_t u, const Rational& w, const Rational& L, const Rational& onep) {
  return u > 0 && Rational(static_cast<std::int64_t>(u)) * onep >= L * w;
}

struct Delta {
  Rational L;
  std::vector<ElementId> covered;
};

std::pair<Cover, LnDeltaStats> solve(const SetCoverInstance& inst, const Rational& eps, const mpc::ClusterConfig& cfg,
                                     mpc::RunTrace& trace) {
  LnDeltaStats stats;
  if (inst.m() == 0) return {Cover{}, std::move(stats)};
  const Params par(inst.m(), cfg.mu);
  const Rational onep = Rational(1) + eps;

  mpc::Cluster<PscState, Packet> cl(cfg, trace);
  for (SetId i = 0; i < inst.n(); ++i) {
    SetRec rec{i, inst.set(i), inst.weight(i), 0, 0, {}};
    rec.uncovered = rec.elems.size();
    cl.state(mpc::home_of(cfg, kSetSalt, i)).sets.push_back(std::move(rec));
  }
  for (PscState& s : cl.states()) {
    s.covered.assign(inst.m(), 0);
    s.class_size.assign(par.classes + 1, 0);
  }
  cl.check_resident();

  auto one = [](const auto&) { return std::uint64_t{1}; };
  std::optional<Rational> start = cl.template aggregate<std::optional<Rational>>(
      "initial-ratio",
      [](std::uint32_t, PscState& s, Rng&) {
        std::optional<Rational> best;
        for (const SetRec& r : s.sets) {
          if (r.uncovered == 0) continue;
          Rational q = Rational(static_cast<std::int64_t>(r.uncovered)) / r.w;
          if (!best || q > *best) best = q;
        }
        return best;
      },
      [](const std::optional<Rational>& x, const std::optional<Rational>& y) {
        if (!x) return y;
        if (!y) return x;
        return *x > *y ? x : y;
      },
      one);
  if (!start) throw Uncoverable(*inst.first_uncoverable());

  Delta delta{*start, {}};
  std::uint64_t left = inst.m();
  stats.stages.push_back({delta.L, {}, 0, 0});
  while (true) {
    cl.broadcast("threshold", delta, 1 + delta.covered.size(), [](std::uint32_t, PscState& s, const Delta& d) {
      s.L = d.L;
      for (ElementId j : d.covered) s.covered[j] = 1;
      if (d.covered.empty()) return;
      for (SetRec& r : s.sets) {
        if (r.uncovered == 0) continue;
        std::uint64_t u = 0;
        for (ElementId j : r.elems) u += !s.covered[j];
        r.uncovered = u;
      }
    });
    delta.covered.clear();

    Summary sm = cl.template aggregate<Summary>(
        "summary",
        [&](std::uint32_t, PscState& s, Rng&) {
          Summary out;
          out.counts.assign(par.classes + 1, 0);
          for (SetRec& r : s.sets) {
            r.cls = 0;
            if (r.uncovered == 0) continue;
            Rational q = Rational(static_cast<std::int64_t>(r.uncovered)) / r.w;
            if (!out.best || q > *out.best) out.best = q;
            if (!profitable(r.uncovered, r.w, s.L, onep)) continue;
            r.cls = par.class_of(r.uncovered);
            ++out.counts[r.cls];
            out.phi += r.uncovered;
          }
          return out;
        },
        merge, [&](const Summary&) { return std::uint64_t{par.classes + 3}; });

    LStage& stage = stats.stages.back();
    stage.phi.push_back(sm.phi);
    if (left == 0) break;
    if (sm.phi == 0) {
      // skip thresholds that would leave the inner loop empty
      Rational L = delta.L;
      do {
        L /= onep;
      } while (*sm.best * onep < L);
      delta.L = L;
      stats.stages.push_back({L, {}, 0, 0});
      continue;
    }

    cl.broadcast("class-sizes", sm.counts, sm.counts.size(),
                 [](std::uint32_t, PscState& s, const std::vector<std::uint64_t>& c) { s.class_size = c; });

    while (true) {
      ++stage.iterations;
      ++stats.iterations;
      SizeMap sizes = cl.template aggregate<SizeMap>(
          "sample-groups",
          [&](std::uint32_t, PscState& s, Rng& rng) {
            SizeMap out;
            std::vector<std::vector<std::uint32_t>> local(par.classes + 1);
            for (std::uint32_t k = 0; k < s.sets.size(); ++k) {
              s.sets[k].groups.clear();
              if (s.sets[k].cls != 0) local[s.sets[k].cls].push_back(k);
            }
            for (std::uint32_t i = 1; i <= par.classes; ++i) {
              if (local[i].empty()) continue;
              const double q = std::min(1.0, par.target / static_cast<double>(s.class_size[i]));
              for (std::uint32_t j = 0; j < par.groups[i]; ++j) {
                std::uint64_t c = 0;
                for (std::uint64_t x = rng.geometric(q); x < local[i].size(); x += 1 + rng.geometric(q)) {
                  s.sets[local[i][x]].groups.emplace_back(i, j);
                  ++c;
                }
                if (c > 0) out.emplace_back(group_key(i, j), c);
              }
            }
            return out;
          },
          merge_sizes, [](const SizeMap& x) { return 2 * static_cast<std::uint64_t>(x.size()); });

      bool ok = true;
      for (const auto& [key, c] : sizes) ok = ok && static_cast<double>(c) <= par.cap;
      cl.broadcast("verdict", ok, 1, [](std::uint32_t, PscState& s, const bool& good) {
        if (good) return;
        for (SetRec& r : s.sets) r.groups.clear();
      });
      if (!ok) {
        ++stage.oversized;
        stage.phi.push_back(sm.phi);
        continue;
      }

      cl.round("ship", [&](auto& ctx, PscState& s, auto) {
        for (SetRec& r : s.sets) {
          if (r.groups.empty()) continue;
          Packet pk = mpc::packet(kData, r.i, 0, 3);
          pk.q = r.w;
          for (ElementId j : r.elems) {
            if (!s.covered[j]) pk.list.push_back(j);
          }
          pk.b = pk.list.size();
          for (const auto& [i, j] : r.groups) {
            pk.list.push_back(i);
            pk.list.push_back(j);
          }
          r.groups.clear();
          ctx.send(0, std::move(pk));
        }
      });

      cl.round("add", [&](auto& ctx, PscState& s, auto inbox) {
        if (!ctx.is_central()) return;
        // (class, group, set, inbox index)
        std::vector<std::tuple<std::uint32_t, std::uint32_t, SetId, std::size_t>> members;
        for (std::size_t k = 0; k < inbox.size(); ++k) {
          const Packet& pk = inbox[k].msg;
          for (std::size_t x = pk.b; x + 1 < pk.list.size(); x += 2) {
            members.emplace_back(pk.list[x], pk.list[x + 1], static_cast<SetId>(pk.a), k);
          }
        }
        std::sort(members.begin(), members.end());
        ctx.charge(4 * members.size());
        for (std::size_t lo = 0; lo < members.size();) {
          std::size_t hi = lo;
          auto same = [&](std::size_t x) {
            return std::get<0>(members[x]) == std::get<0>(members[lo]) && std::get<1>(members[x]) == std::get<1>(members[lo]);
          };
          while (hi < members.size() && same(hi)) ++hi;
          const std::uint32_t cls = std::get<0>(members[lo]);
          for (std::size_t x = lo; x < hi; ++x) {
            const Packet& pk = inbox[std::get<3>(members[x])].msg;
            std::uint64_t u = 0;
            for (std::size_t t = 0; t < pk.b; ++t) u += !s.covered[pk.list[t]];
            if (2 * u < par.need[cls] || !profitable(u, pk.q, s.L, onep)) continue;
            s.chosen.push_back(static_cast<SetId>(pk.a));
            stats.additions.push_back({static_cast<SetId>(pk.a), u, s.L});
            for (std::size_t t = 0; t < pk.b; ++t) {
              if (!s.covered[pk.list[t]]) {
                s.covered[pk.list[t]] = 1;
                delta.covered.push_back(pk.list[t]);
                --left;
              }
            }
            break;
          }
          lo = hi;
        }
      });
      std::sort(delta.covered.begin(), delta.covered.end());
      break;
    }
  }

  Cover cover;
  cover.sets = cl.central().chosen;
  std::sort(cover.sets.begin(), cover.sets.end());
  return {std::move(cover), std::move(stats)};
}

}  // namespace

std::uint64_t potential_phi(const SetCoverInstance& inst, const std::vector<char>& covered, const Rational& L,
                            const Rational& epsilon) {
  const Rational onep = Rational(1) + epsilon;
  std::uint64_t phi = 0;
  for (SetId i = 0; i < inst.n(); ++i) {
    std::uint64_t u = 0;
    for (ElementId j : inst.set(i)) u += !covered[j];
    if (profitable(u, inst.weight(i), L, onep)) phi += u;
  }
  return phi;
}

namespace {

struct PreState {
  std::vector<SetRec> sets;
  Rational gamma;

  std::uint64_t words() const {
    std::uint64_t w = 1;
    for (const SetRec& s : sets) w += 2 + s.elems.size();
    return w;
  }
};

using MinMap = std::vector<std::pair<ElementId, Rational>>;

MinMap merge_min(const MinMap& x, const MinMap& y) {
  MinMap z;
  z.reserve(x.size() + y.size());
  std::size_t a = 0, b = 0;
  while (a < x.size() || b < y.size()) {
    if (b == y.size() || (a < x.size() && x[a].first < y[b].first)) {
      z.push_back(x[a++]);
    } else if (a == x.size() || y[b].first < x[a].first) {
      z.push_back(y[b++]);
    } else {
      z.emplace_back(x[a].first, std::min(x[a].second, y[b].second));
      ++a;
      ++b;
    }
  }
  return z;
}

std::vector<SetId> merge_ids(const std::vector<SetId>& x, const std::vector<SetId>& y) {
  std::vector<SetId> z;
  std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(z));
  return z;
}

bool is_forced(const Rational& w, const Rational& gamma, const Rational& eps, std::size_t n) {
  return w * Rational(static_cast<std::int64_t>(n)) <= gamma * eps;
}

bool is_dropped(const Rational& w, const Rational& gamma, std::size_t m) {
  return w > gamma * Rational(static_cast<std::int64_t>(m));
}

}  // namespace

Preprocessed preprocess_weights(const SetCoverInstance& inst, const Rational& epsilon, const mpc::ClusterConfig& cfg,
                                mpc::RunTrace& trace) {
  require_epsilon(epsilon);
  inst.require_coverable();
  Preprocessed out;
  const std::uint64_t before = trace.rounds.size();
  mpc::Cluster<PreState, Packet> cl(cfg, trace);
  for (SetId i = 0; i < inst.n(); ++i) cl.state(mpc::home_of(cfg, kSetSalt, i)).sets.push_back({i, inst.set(i), inst.weight(i), 0, 0, {}});
  cl.check_resident();

  MinMap mins = cl.template aggregate<MinMap>(
      "element-min",
      [](std::uint32_t, PreState& s, Rng&) {
        MinMap local;
        for (const SetRec& r : s.sets) {
          for (ElementId j : r.elems) local.emplace_back(j, r.w);
        }
        std::sort(local.begin(), local.end());
        MinMap out;
        for (const auto& [j, w] : local) {
          if (out.empty() || out.back().first != j) out.emplace_back(j, w);
        }
        return out;
      },
      merge_min, [](const MinMap& x) { return 2 * static_cast<std::uint64_t>(x.size()); });
  Rational gamma;
  for (const auto& [j, w] : mins) gamma = std::max(gamma, w);
  out.gamma = gamma;

  cl.broadcast("gamma", gamma, 1, [](std::uint32_t, PreState& s, const Rational& g) { s.gamma = g; });
  out.forced = cl.template aggregate<std::vector<SetId>>(
      "forced",
      [&](std::uint32_t, PreState& s, Rng&) {
        std::vector<SetId> f;
        for (const SetRec& r : s.sets) {
          if (is_forced(r.w, s.gamma, epsilon, inst.n())) f.push_back(r.i);
        }
        std::sort(f.begin(), f.end());
        return f;
      },
      merge_ids, [](const std::vector<SetId>& x) { return 1 + static_cast<std::uint64_t>(x.size()); });
  out.rounds = trace.rounds.size() - before;

  std::vector<char> covered(inst.m(), 0);
  for (SetId i : out.forced) {
    for (ElementId j : inst.set(i)) covered[j] = 1;
  }
  std::vector<ElementId> index(inst.m(), 0);
  for (ElementId j = 0; j < inst.m(); ++j) {
    if (covered[j]) continue;
    index[j] = static_cast<ElementId>(out.elements.size());
    out.elements.push_back(j);
  }
  std::vector<std::vector<ElementId>> sets;
  std::vector<Rational> weights;
  for (SetId i = 0; i < inst.n(); ++i) {
    if (is_forced(inst.weight(i), gamma, epsilon, inst.n()) || is_dropped(inst.weight(i), gamma, inst.m())) continue;
    std::vector<ElementId> s;
    for (ElementId j : inst.set(i)) {
      if (!covered[j]) s.push_back(index[j]);
    }
    out.kept.push_back(i);
    sets.push_back(std::move(s));
    weights.push_back(inst.weight(i));
  }
  out.reduced = SetCoverInstance(out.elements.size(), std::move(sets), std::move(weights));
  return out;
}

LnDeltaRun approx_sc_lnDelta(const SetCoverInstance& inst, const Rational& epsilon, const mpc::ClusterConfig& base,
                             const LnDeltaOptions& opts) {
  require_epsilon(epsilon);
  inst.require_coverable();
  LnDeltaRun run;
  auto attempt = [&](const mpc::ClusterConfig& cfg) {
    if (!opts.preprocess) return solve(inst, epsilon, cfg, run.trace);
    Preprocessed pre = preprocess_weights(inst, epsilon, cfg, run.trace);
    auto [cover, stats] = solve(pre.reduced, epsilon, cfg, run.trace);
    for (SetId& i : cover.sets) i = pre.kept[i];
    for (Addition& a : stats.additions) a.set = pre.kept[a.set];
    cover.sets.insert(cover.sets.end(), pre.forced.begin(), pre.forced.end());
    std::sort(cover.sets.begin(), cover.sets.end());
    stats.forced = pre.forced;
    return std::make_pair(std::move(cover), std::move(stats));
  };
  auto [cover, stats] = mpc::run_attempts(base, run.trace, attempt);
  run.cover = std::move(cover);
  run.stats = std::move(stats);
  nlohmann::json stages = nlohmann::json::array();
  for (const LStage& s : run.stats.stages) {
    stages.push_back({{"L", s.L.str()}, {"phi", s.phi}, {"iterations", s.iterations}, {"oversized", s.oversized}});
  }
  run.trace.metrics = {{"iterations", run.stats.iterations},
                       {"stages", stages},
                       {"additions", run.stats.additions.size()},
                       {"forced", run.stats.forced.size()}};
  return run;
}

mpc::ConfigRequest sc_lnDelta_request(const SetCoverInstance& inst, double mu) {
  mpc::ConfigRequest req;
  req.n = std::max<std::size_t>(2, inst.m());
  req.size = std::max<std::size_t>(1, inst.total_size());
  req.mu = mu;
  req.space_factor = std::max(1.0, std::log(static_cast<double>(std::max<std::size_t>(2, inst.n()))));
  return req;
}

}  // namespace lrmr
