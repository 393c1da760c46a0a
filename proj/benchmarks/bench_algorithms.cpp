#include <map>

#include <benchmark/benchmark.h>

#include "lrmr/colouring.hpp"
#include "lrmr/generators.hpp"
#include "lrmr/hungry_greedy.hpp"
#include "lrmr/parallel_set_cover.hpp"
#include "lrmr/rlr_matching.hpp"
#include "lrmr/rlr_set_cover.hpp"

using namespace lrmr;

namespace {

constexpr double kMu = 0.2;

const Graph& graph_for(std::size_t n) {
  static std::map<std::size_t, Graph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, generate_graph(n, Rational(2, 5), 1, 100, n)).first;
  return it->second;
}

mpc::ClusterConfig quiet(mpc::ConfigRequest req) {
  req.trace = mpc::TraceLevel::Summary;
  return mpc::derive_config(req);
}

void report(benchmark::State& state, const mpc::RunTrace& t) {
  state.counters["rounds"] = static_cast<double>(t.total_rounds);
  state.counters["peak_words"] = static_cast<double>(t.peak_memory);
  state.counters["budget_words"] = static_cast<double>(t.config.memory_budget_words);
}

void BM_Matching(benchmark::State& state) {
  const Graph& g = graph_for(static_cast<std::size_t>(state.range(0)));
  const auto cfg = quiet(matching_request(g, kMu));
  MatchingRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = approx_max_matching(g, cfg));
  report(state, run.trace);
  state.counters["iterations"] = run.stats.iterations;
}

void BM_BMatching(benchmark::State& state) {
  const Graph& g = graph_for(static_cast<std::size_t>(state.range(0)));
  const std::vector<std::uint32_t> b(g.n(), 2);
  const Rational eps(1, 10);
  const auto cfg = quiet(b_matching_request(g, b, eps, kMu));
  MatchingRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = approx_b_matching(g, b, eps, cfg));
  report(state, run.trace);
}

void BM_VertexCover(benchmark::State& state) {
  const Graph& g = graph_for(static_cast<std::size_t>(state.range(0)));
  const auto cfg = quiet(vc_request(g, kMu));
  CoverRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = vertex_cover_2approx(g, {}, cfg));
  report(state, run.trace);
  state.counters["iterations"] = run.stats.iterations;
}

void BM_MisSimple(benchmark::State& state) {
  const Graph& g = graph_for(static_cast<std::size_t>(state.range(0)));
  const auto cfg = quiet(mis_request(g, kMu));
  MisRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = mis_simple(g, cfg));
  report(state, run.trace);
}

void BM_MisFast(benchmark::State& state) {
  const Graph& g = graph_for(static_cast<std::size_t>(state.range(0)));
  const auto cfg = quiet(mis_request(g, kMu));
  MisRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = mis_fast(g, cfg));
  report(state, run.trace);
}

void BM_Clique(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = generate_gnp(n, 0.9, 1, 1, n);
  const auto cfg = quiet(mis_request(g, kMu));
  MisRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = maximal_clique(g, cfg));
  report(state, run.trace);
}

void BM_VertexColouring(benchmark::State& state) {
  const Graph& g = graph_for(static_cast<std::size_t>(state.range(0)));
  const auto cfg = quiet(colouring_request(g, kMu));
  ColouringRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = vertex_colouring(g, cfg));
  report(state, run.trace);
  state.counters["colours"] = static_cast<double>(run.stats.colours);
}

void BM_EdgeColouring(benchmark::State& state) {
  const Graph& g = graph_for(static_cast<std::size_t>(state.range(0)));
  const auto cfg = quiet(colouring_request(g, kMu));
  ColouringRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = edge_colouring(g, cfg));
  report(state, run.trace);
  state.counters["colours"] = static_cast<double>(run.stats.colours);
}

void BM_SetCoverF(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = generate_set_cover(m / 8, m, 0.02, 1, 100, m);
  const auto cfg = quiet(sc_f_request(inst, kMu));
  CoverRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = approx_sc_f(inst, cfg));
  report(state, run.trace);
}

void BM_SetCoverLnDelta(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = generate_set_cover(m / 8, m, 0.02, 1, 100, m);
  const Rational eps(1, 10);
  const auto cfg = quiet(sc_lnDelta_request(inst, kMu));
  LnDeltaRun run;
  for (auto _ : state) benchmark::DoNotOptimize(run = approx_sc_lnDelta(inst, eps, cfg));
  report(state, run.trace);
  state.counters["iterations"] = run.stats.iterations;
}

}  // namespace

BENCHMARK(BM_Matching)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BMatching)->RangeMultiplier(2)->Range(256, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VertexCover)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MisSimple)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MisFast)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Clique)->RangeMultiplier(2)->Range(128, 512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VertexColouring)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdgeColouring)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SetCoverF)->RangeMultiplier(4)->Range(1024, 16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SetCoverLnDelta)->RangeMultiplier(4)->Range(1024, 16384)->Unit(benchmark::kMillisecond);
