#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "lrmr/mpc/config.hpp"
#include "lrmr/mpc/trace.hpp"
#include "lrmr/random.hpp"

namespace lrmr::mpc {

/// Rounds a fanout-ary tree over `machines` machines needs: ceil(log_f M).
inline std::uint32_t tree_depth(std::uint64_t machines, std::uint64_t fanout) {
  std::uint32_t depth = 0;
  for (std::uint64_t reach = 1; reach < machines; reach *= fanout) ++depth;
  return depth;
}

/// Deterministic placement of an object onto a machine.
inline std::uint32_t home_of(const ClusterConfig& cfg, std::uint64_t salt, std::uint64_t key) {
  return static_cast<std::uint32_t>(hash_words({cfg.seed, salt, key}) % cfg.machine_count);
}

/// Round rng for (seed, round, machine).
inline Rng machine_rng(std::uint64_t seed, std::uint64_t round, std::uint32_t machine) {
  return Rng(hash_words({seed, round, machine}));
}

/// Checks associativity and commutativity of `combine` on three values.
template <class T, class Combine>
bool probe_combine(const T& a, const T& b, const T& c, Combine&& combine) {
  return combine(combine(a, b), c) == combine(a, combine(b, c)) && combine(a, b) == combine(b, a);
}

template <class Msg>
struct Envelope {
  std::uint32_t from = 0;
  Msg msg;
};

template <class State, class Msg>
class Cluster;

/// Per-machine view handed to a round step.
template <class Msg>
class Context {
 public:
  Context(std::uint32_t id, std::uint32_t machines, std::uint64_t round, std::uint64_t seed)
      : id_(id), machines_(machines), round_(round), seed_(seed) {}

  std::uint32_t id() const noexcept { return id_; }
  std::uint32_t machines() const noexcept { return machines_; }
  std::uint64_t round() const noexcept { return round_; }
  bool is_central() const noexcept { return id_ == 0; }

  Rng& rng() {
    if (!rng_ready_) {
      rng_ = machine_rng(seed_, round_, id_);
      rng_ready_ = true;
    }
    return rng_;
  }

  void send(std::uint32_t to, Msg msg) {
    if (to >= machines_) throw std::out_of_range("message to machine " + std::to_string(to));
    out_words_ += msg.words();
    outbox_.push_back({to, std::move(msg)});
  }

  /// Transient working memory used during the step, beyond state and mail.
  void charge(std::uint64_t words) { scratch_ = std::max(scratch_, words); }

  void declare_failure(std::string reason) {
    if (!failed_) {
      failed_ = true;
      reason_ = std::move(reason);
    }
  }

 private:
  template <class, class>
  friend class Cluster;

  std::uint32_t id_;
  std::uint32_t machines_;
  std::uint64_t round_;
  std::uint64_t seed_;
  Rng rng_;
  bool rng_ready_ = false;
  std::vector<std::pair<std::uint32_t, Msg>> outbox_;
  std::uint64_t out_words_ = 0;
  std::uint64_t scratch_ = 0;
  bool failed_ = false;
  std::string reason_;
};

/// Simulated cluster. `State` needs `words()`; `Msg` needs `words()` and
/// `key()`. Machine 0 is the central machine and also holds a shard.
template <class State, class Msg>
class Cluster {
 public:
  using Inbox = std::span<const Envelope<Msg>>;

  Cluster(const ClusterConfig& cfg, RunTrace& trace)
      : cfg_(cfg), trace_(trace), states_(cfg.machine_count), inbox_(cfg.machine_count) {
    cfg_.validate();
  }

  const ClusterConfig& config() const noexcept { return cfg_; }
  std::uint32_t size() const noexcept { return cfg_.machine_count; }
  State& state(std::uint32_t id) { return states_[id]; }
  const State& state(std::uint32_t id) const { return states_[id]; }
  State& central() { return states_[0]; }
  std::vector<State>& states() { return states_; }
  std::uint64_t rounds() const noexcept { return rounds_; }
  std::uint64_t budget() const noexcept { return cfg_.memory_budget_words; }

  /// Checks resident state against the budget (e.g. after loading input).
  void check_resident() {
    for (std::uint32_t id = 0; id < size(); ++id) {
      const std::uint64_t w = states_[id].words();
      if (w > budget()) {
        trace_.budget_violated = true;
        throw MemoryExceeded(id, w, budget());
      }
    }
  }

  /// One synchronous round: step(ctx, state, inbox) on every machine, then
  /// delivery. Inboxes are ordered by (sender, key).
  template <class Step>
  void round(std::string_view label, Step&& step) {
    const std::uint32_t M = size();
    std::vector<Context<Msg>> ctx;
    ctx.reserve(M);
    for (std::uint32_t id = 0; id < M; ++id) ctx.emplace_back(id, M, rounds_, cfg_.seed);
    std::vector<std::uint64_t> in_words(M, 0), before(M, 0);
    for (std::uint32_t id = 0; id < M; ++id) {
      for (const auto& env : inbox_[id]) in_words[id] += env.msg.words();
      before[id] = states_[id].words() + in_words[id];
    }

    auto run_one = [&](std::uint32_t id) { step(ctx[id], states_[id], Inbox(inbox_[id])); };
    if (cfg_.parallel && M > 1) {
      run_parallel(M, run_one);
    } else {
      for (std::uint32_t id = 0; id < M; ++id) run_one(id);
    }

    RoundRecord rec;
    rec.label = std::string(label);
    std::vector<std::uint64_t> peaks(M, 0), received(M, 0), sent(M, 0);
    std::vector<std::vector<Envelope<Msg>>> next(M);
    for (std::uint32_t id = 0; id < M; ++id) {
      const std::uint64_t after = states_[id].words() + in_words[id] + ctx[id].out_words_ + ctx[id].scratch_;
      peaks[id] = std::max(before[id], after);
      sent[id] = ctx[id].out_words_;
      for (auto& [to, msg] : ctx[id].outbox_) {
        received[to] += msg.words();
        ++rec.messages;
        next[to].push_back({id, std::move(msg)});
      }
      rec.words += sent[id];
    }
    for (auto& box : next) {
      std::stable_sort(box.begin(), box.end(), [](const Envelope<Msg>& a, const Envelope<Msg>& b) {
        if (a.from != b.from) return a.from < b.from;
        return a.msg.key() < b.msg.key();
      });
    }
    inbox_ = std::move(next);

    int failed = -1, oversized = -1, over = -1;
    for (std::uint32_t id = 0; id < M; ++id) {
      if (failed < 0 && ctx[id].failed_) failed = static_cast<int>(id);
      if (oversized < 0 && sent[id] > budget()) oversized = static_cast<int>(id);
      if (over < 0 && peaks[id] > budget()) over = static_cast<int>(id);
    }
    if (failed >= 0) {
      rec.failure = true;
      rec.reason = ctx[static_cast<std::size_t>(failed)].reason_;
    } else if (oversized >= 0) {
      rec.failure = true;
      rec.reason = "oversized message";
    } else if (over >= 0) {
      rec.failure = true;
      rec.reason = "memory exceeded";
    }
    finish(std::move(rec), peaks, received, sent);

    if (failed >= 0) {
      for (auto& box : inbox_) box.clear();
      throw AttemptFailed(ctx[static_cast<std::size_t>(failed)].reason_);
    }
    if (oversized >= 0) {
      const auto id = static_cast<std::uint32_t>(oversized);
      throw OversizedMessage(id, sent[id], budget());
    }
    if (over >= 0) {
      const auto id = static_cast<std::uint32_t>(over);
      throw MemoryExceeded(id, peaks[id], budget());
    }
  }

  /// Pushes `payload` from the central machine down a fanout-ary tree;
  /// deliver(id, state, payload) runs on every machine (central first).
  template <class T, class Deliver>
  void broadcast(std::string_view label, const T& payload, std::uint64_t words, Deliver&& deliver) {
    require_idle();
    const std::uint32_t M = size();
    deliver(std::uint32_t{0}, states_[0], payload);
    if (M == 1) return;
    if (cfg_.free_broadcast) {
      for (std::uint32_t id = 1; id < M; ++id) deliver(id, states_[id], payload);
      return;
    }
    const std::uint64_t f = cfg_.fanout;
    for (std::uint64_t span = 1; span < M; span *= f) {
      std::vector<std::uint64_t> received(M, 0), sent(M, 0), peaks(M, 0);
      RoundRecord rec;
      rec.label = std::string(label);
      const std::uint64_t holders = std::min<std::uint64_t>(span, M);
      for (std::uint64_t x = 0; x < holders; ++x) {
        for (std::uint64_t k = 1; k < f; ++k) {
          const std::uint64_t y = x + k * span;
          if (y >= M) break;
          sent[x] += words;
          received[y] += words;
          ++rec.messages;
          rec.words += words;
          deliver(static_cast<std::uint32_t>(y), states_[y], payload);
        }
      }
      for (std::uint32_t id = 0; id < M; ++id) peaks[id] = states_[id].words() + received[id] + sent[id];
      account_tree_round(std::move(rec), peaks, received, sent);
    }
  }

  /// Folds extract(id, state, rng) up a fanout-ary tree to the central
  /// machine. `combine` must be associative and commutative.
  template <class T, class Extract, class Combine, class WordsOf>
  T aggregate(std::string_view label, Extract&& extract, Combine&& combine, WordsOf&& words_of) {
    require_idle();
    const std::uint32_t M = size();
    std::vector<T> val;
    val.reserve(M);
    for (std::uint32_t id = 0; id < M; ++id) {
      Rng rng = machine_rng(cfg_.seed, rounds_, id);
      val.push_back(extract(id, states_[id], rng));
    }
#ifndef NDEBUG
    if (M >= 3 && !probe_combine(val[0], val[1], val[2], combine)) {
      throw std::logic_error("aggregate combine is not associative and commutative");
    }
#endif
    if (M == 1) return std::move(val[0]);
    if (cfg_.free_broadcast) {
      for (std::uint32_t id = 1; id < M; ++id) val[0] = combine(val[0], val[id]);
      return std::move(val[0]);
    }
    const std::uint64_t f = cfg_.fanout;
    const std::uint32_t depth = tree_depth(M, f);
    std::vector<std::uint64_t> level_start(depth + 1, 1);
    for (std::uint32_t t = 1; t <= depth; ++t) level_start[t] = level_start[t - 1] * f;
    for (std::uint32_t t = depth; t >= 1; --t) {
      const std::uint64_t lo = level_start[t - 1];
      const std::uint64_t hi = std::min<std::uint64_t>(level_start[t], M);
      std::vector<std::uint64_t> received(M, 0), sent(M, 0), peaks(M, 0);
      RoundRecord rec;
      rec.label = std::string(label);
      for (std::uint64_t x = lo; x < hi; ++x) {
        const std::uint64_t w = words_of(val[x]);
        sent[x] += w;
        received[x % lo] += w;
        ++rec.messages;
        rec.words += w;
      }
      for (std::uint32_t id = 0; id < M; ++id) {
        peaks[id] = states_[id].words() + words_of(val[id]) + received[id] + sent[id];
      }
      for (std::uint64_t x = lo; x < hi; ++x) val[x % lo] = combine(val[x % lo], val[x]);
      account_tree_round(std::move(rec), peaks, received, sent);
    }
    return std::move(val[0]);
  }

 private:
  void require_idle() const {
    for (const auto& box : inbox_) {
      if (!box.empty()) throw std::logic_error("tree operation with undelivered messages");
    }
  }

  template <class F>
  void run_parallel(std::uint32_t M, F& run_one) {
    const std::uint32_t workers = std::min<std::uint32_t>(M, std::max(2u, std::thread::hardware_concurrency()));
    std::atomic<std::uint32_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint32_t id = next++; id < M; id = next++) run_one(id);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  void finish(RoundRecord rec, const std::vector<std::uint64_t>& peaks, const std::vector<std::uint64_t>& received,
              const std::vector<std::uint64_t>& sent) {
    for (std::size_t id = 0; id < peaks.size(); ++id) {
      rec.max_peak = std::max(rec.max_peak, peaks[id]);
      rec.max_received = std::max(rec.max_received, received[id]);
      rec.max_sent = std::max(rec.max_sent, sent[id]);
    }
    if (cfg_.trace == TraceLevel::Verbose) {
      rec.received = received;
      rec.sent = sent;
    }
    ++rounds_;
    trace_.record(std::move(rec), peaks);
  }

  void account_tree_round(RoundRecord rec, const std::vector<std::uint64_t>& peaks,
                          const std::vector<std::uint64_t>& received, const std::vector<std::uint64_t>& sent) {
    int over = -1;
    for (std::size_t id = 0; id < peaks.size(); ++id) {
      if (over < 0 && peaks[id] > budget()) over = static_cast<int>(id);
    }
    if (over >= 0) {
      rec.failure = true;
      rec.reason = "memory exceeded";
    }
    finish(std::move(rec), peaks, received, sent);
    if (over >= 0) {
      const auto id = static_cast<std::uint32_t>(over);
      throw MemoryExceeded(id, peaks[id], budget());
    }
  }

  ClusterConfig cfg_;
  RunTrace& trace_;
  std::vector<State> states_;
  std::vector<std::vector<Envelope<Msg>>> inbox_;
  std::uint64_t rounds_ = 0;
};

/// Runs `attempt(cfg)` with seeds seed, seed+1, ... until it returns, up to
/// retry_cap extra attempts after declared failures. MemoryExceeded is not
/// retried.
template <class F>
auto run_attempts(const ClusterConfig& base, RunTrace& trace, F&& attempt) -> decltype(attempt(base)) {
  trace.config = base;
  for (std::uint32_t a = 0; a <= base.retry_cap; ++a) {
    ClusterConfig cfg = base;
    cfg.seed = base.seed + a;
    trace.begin_attempt(cfg.seed);
    try {
      auto result = attempt(cfg);
      trace.end_attempt("ok", "");
      return result;
    } catch (const AttemptFailed& e) {
      trace.end_attempt("failed", e.what());
    } catch (const MemoryExceeded& e) {
      trace.end_attempt("memory", e.what());
      throw;
    }
  }
  throw RetriesExhausted("all " + std::to_string(base.retry_cap + 1) + " attempts failed");
}

}  // namespace lrmr::mpc
