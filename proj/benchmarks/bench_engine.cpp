#include <benchmark/benchmark.h>

#include "lrmr/mpc/cluster.hpp"
#include "lrmr/mpc/packet.hpp"

using namespace lrmr;

namespace {

struct Slot {
  std::uint64_t got = 0;
  std::uint64_t words() const { return 1; }
};

mpc::ClusterConfig config(std::uint32_t machines, bool parallel) {
  mpc::ClusterConfig cfg;
  cfg.n = 1u << 16;
  cfg.machine_count = machines;
  cfg.fanout = 4;
  cfg.memory_budget_words = std::uint64_t{1} << 30;
  cfg.parallel = parallel;
  cfg.trace = mpc::TraceLevel::Summary;
  return cfg;
}

// Every machine sends `per` one-word packets spread over all machines.
void BM_ShuffleRound(benchmark::State& state) {
  const auto machines = static_cast<std::uint32_t>(state.range(0));
  const auto per = static_cast<std::uint32_t>(state.range(1));
  for (auto _ : state) {
    mpc::RunTrace trace;
    trace.config = config(machines, state.range(2) != 0);
    mpc::Cluster<Slot, mpc::Packet> cl(trace.config, trace);
    cl.round("send", [&](auto& ctx, Slot&, auto) {
      for (std::uint32_t k = 0; k < per; ++k) ctx.send(static_cast<std::uint32_t>(ctx.rng().below(machines)), mpc::packet(0, k));
    });
    cl.round("drain", [](auto&, Slot& s, auto inbox) { s.got = inbox.size(); });
    benchmark::DoNotOptimize(cl.state(0).got);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * machines * per);
}

void BM_BroadcastAggregate(benchmark::State& state) {
  const auto machines = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    mpc::RunTrace trace;
    trace.config = config(machines, false);
    mpc::Cluster<Slot, mpc::Packet> cl(trace.config, trace);
    cl.broadcast("bc", std::uint64_t{7}, 1, [](std::uint32_t, Slot& s, const std::uint64_t& v) { s.got = v; });
    const auto sum = cl.template aggregate<std::uint64_t>(
        "sum", [](std::uint32_t, Slot& s, Rng&) { return s.got; }, [](std::uint64_t a, std::uint64_t b) { return a + b; },
        [](std::uint64_t) { return std::uint64_t{1}; });
    benchmark::DoNotOptimize(sum);
  }
}

}  // namespace

BENCHMARK(BM_ShuffleRound)->ArgsProduct({{16, 64, 256}, {64, 1024}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BroadcastAggregate)->RangeMultiplier(4)->Range(4, 1024)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
