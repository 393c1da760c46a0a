// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "lrmr/colouring.hpp"
#include "lrmr/generators.hpp"
#include "lrmr/hungry_greedy.hpp"
#include "lrmr/parallel_set_cover.hpp"
#include "lrmr/rlr_matching.hpp"
#include "lrmr/rlr_set_cover.hpp"
#include "lrmr/validate.hpp"
#include "support.hpp"

#ifndef LRMR_CLI_PATH
#error "LRMR_CLI_PATH must name the lrmr executable"
#endif

using namespace lrmr;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

// Every trace produced by the suite, for the memory criterion.
struct MemoryLedger {
  std::uint64_t runs = 0;
  std::uint64_t unsound = 0;
  void add(const mpc::RunTrace& t) {
    ++runs;
    unsound += !test::memory_sound(t);
  }
} memory;

std::string ratio(std::uint64_t ok, std::uint64_t total) { return std::to_string(ok) + "/" + std::to_string(total); }

Result matching_ratio() {
  Rng rng(1001);
  std::uint64_t good = 0, runs = 0;
  for (int t = 0; t < 200; ++t) {
    const Graph g = test::small_random_graph(rng, 10, 16, 10);
    const Rational opt = test::enumerate_max_matching(g);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto run = approx_max_matching(g, test::tuned(matching_request(g, 0.2), seed, 1 + static_cast<std::uint32_t>(rng.below(4))));
      memory.add(run.trace);
      ++runs;
      good += validate(run.matching, g).feasible && Rational(2) * run.weight >= opt;
    }
  }
  return {good == 1000 && runs == 1000, ratio(good, runs) + " runs with 2*ALG >= OPT"};
}

Result set_cover_f() {
  Rng rng(1002);
  std::uint64_t good = 0, runs = 0;
  for (int t = 0; t < 200; ++t) {
    const auto inst = test::small_random_cover(rng, 12, 12, 10);
    const Rational opt = test::enumerate_min_cover(inst);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto run = approx_sc_f(inst, test::tuned(sc_f_request(inst, 0.2), seed, 1 + static_cast<std::uint32_t>(rng.below(4))));
      memory.add(run.trace);
      ++runs;
      good += validate(run.cover, inst).feasible &&
              inst.weight_of(run.cover.sets) <= Rational(static_cast<std::int64_t>(inst.f())) * opt;
    }
  }
  return {good == 1000 && runs == 1000, ratio(good, runs) + " runs with ALG <= f*OPT"};
}

Result eps_greedy_cover() {
  Rng rng(1003);
  const Rational eps(1, 10);
  std::uint64_t good = 0;
  for (int t = 0; t < 100; ++t) {
    const auto inst = test::small_random_cover(rng, 16, 12, 10);
    const Rational opt = test::enumerate_min_cover(inst);
    const auto run = approx_sc_lnDelta(inst, eps, test::tuned(sc_lnDelta_request(inst, 0.2), 1 + rng.below(100)));
    memory.add(run.trace);
    good += validate(run.cover, inst).feasible &&
            inst.weight_of(run.cover.sets) <= (Rational(1) + eps) * harmonic(inst.delta()) * opt;
  }
  return {good == 100, ratio(good, 100) + " instances with ALG <= (1+eps)H_Delta*OPT"};
}

Result b_matching() {
  Rng rng(1004);
  const Rational eps(1, 10);
  std::uint64_t good = 0;
  for (int t = 0; t < 100; ++t) {
    const Graph g = test::small_random_graph(rng, 10, 16, 10);
    const auto b = static_cast<std::uint32_t>(1 + t % 3);
    const std::vector<std::uint32_t> caps(g.n(), b);
    const Rational opt = test::enumerate_max_matching(g, b);
    const auto run = approx_b_matching(g, caps, eps, test::tuned(b_matching_request(g, caps, eps, 0.2), 1 + rng.below(100)));
    memory.add(run.trace);
    const Rational bound = Rational(3) - Rational(2, std::max<std::int64_t>(2, b)) + Rational(2) * eps;
    good += validate(run.matching, g, caps).feasible && run.weight * bound >= opt;
  }
  return {good == 100, ratio(good, 100) + " instances with ALG*(3-2/max(2,b)+2eps) >= OPT"};
}

Result mis_and_clique() {
  Rng rng(1005);
  std::uint64_t good = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(63);
    const Graph g = generate_gnp(n, 0.05 + 0.9 * rng.uniform01(), 1, 1, rng.next());
    const auto cfg = test::tuned(mis_request(g, 0.2), 1 + rng.below(100));
    bool ok = false;
    if (t % 3 == 0) {
      const auto run = mis_simple(g, cfg);
      memory.add(run.trace);
      ok = validate_mis(run.vertices, g).feasible;
    } else if (t % 3 == 1) {
      const auto run = mis_fast(g, cfg);
      memory.add(run.trace);
      ok = validate_mis(run.vertices, g).feasible;
    } else {
      const auto run = maximal_clique(g, cfg);
      memory.add(run.trace);
      ok = validate_clique(run.vertices, g).feasible;
    }
    good += ok;
  }
  return {good == 500, ratio(good, 500) + " runs independent/clique and maximal"};
}

Result colouring() {
  Rng rng(1006);
  std::uint64_t proper = 0, bounded = 0, runs = 0;
  auto tally = [&](const ColouringRun& run, const Graph& g) {
    memory.add(run.trace);
    ++runs;
    proper += validate(run.colouring, g).feasible;
    bounded += run.colouring.colour_count() <= run.stats.kappa * (run.stats.max_group_degree + 1);
  };
  for (int t = 0; t < 40; ++t) {
    const Graph g = generate_graph(64 + rng.below(400), Rational(1 + static_cast<std::int64_t>(rng.below(4)), 10), 1, 1, rng.next());
    const auto cfg = test::tuned(colouring_request(g, 0.2), 1 + rng.below(100));
    tally(vertex_colouring(g, cfg), g);
    tally(edge_colouring(g, cfg), g);
  }
  const double mu = 0.2;
  const Graph big = generate_graph(4096, Rational(2, 5), 1, 1, 4096);
  const double n = static_cast<double>(big.n());
  const double factor = 1 + std::pow(n, -mu / 2) * std::sqrt(6 * std::log(n)) + std::pow(n, -mu);
  std::uint64_t within = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto run = vertex_colouring(big, test::tuned(colouring_request(big, mu), seed));
    tally(run, big);
    within += static_cast<double>(run.colouring.colour_count()) <= factor * static_cast<double>(big.max_degree());
  }
  std::ostringstream d;
  d << "proper " << ratio(proper, runs) << ", kappa bound " << ratio(bounded, runs) << ", n=4096 colours <= "
    << std::setprecision(4) << factor << "*Delta in " << ratio(within, 20);
  return {proper == runs && bounded == runs && within >= 18, d.str()};
}

Result round_complexity() {
  const double mu = 0.2;
  const Graph g = generate_graph(2048, Rational(2, 5), 1, 100, 2048);
  const auto base = mpc::derive_config(matching_request(g, mu));
  const auto phases = static_cast<std::uint32_t>(std::ceil(base.c / mu - 1e-9));
  std::uint64_t match_ok = 0, cover_ok = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto m = approx_max_matching(g, test::tuned(matching_request(g, mu), seed));
    memory.add(m.trace);
    match_ok += m.stats.iterations <= 3 * phases;
    const auto c = vertex_cover_2approx(g, {}, test::tuned(vc_request(g, mu), seed));
    memory.add(c.trace);
    cover_ok += c.stats.iterations <= phases;
  }
  std::ostringstream d;
  d << "ceil(c/mu)=" << phases << "; matching <= " << 3 * phases << " iterations in " << ratio(match_ok, 50)
    << ", set cover <= " << phases << " in " << ratio(cover_ok, 50);
  return {phases == 2 && match_ok >= 48 && cover_ok >= 48, d.str()};
}

Result linear_space_matching() {
  const Graph g = generate_graph(512, Rational(3, 5), 1, 100, 512);
  const double cap = 200 * std::log2(static_cast<double>(g.n()));
  std::uint64_t within = 0;
  double sum = 0;
  std::uint64_t steps = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto run = approx_max_matching(g, test::tuned(matching_request(g, 0.2), seed, 0, g.n()));
    memory.add(run.trace);
    within += run.stats.iterations <= cap;
    const auto& a = run.stats.alive;
    for (std::size_t i = 0; i + 1 < a.size(); ++i, ++steps) sum += static_cast<double>(a[i + 1]) / static_cast<double>(a[i]);
  }
  const double mean = steps ? sum / static_cast<double>(steps) : 1.0;
  std::ostringstream d;
  d << "iterations <= " << cap << " in " << ratio(within, 50) << ", mean edge ratio " << std::setprecision(4) << mean
    << " over " << steps << " iterations";
  return {within == 50 && steps > 0 && mean <= 0.99, d.str()};
}

Result memory_soundness() {
  const std::size_t n = 512;
  const Graph g = generate_gnp(n, 0.9, 1, 1, 512);
  const auto run = maximal_clique(g, test::tuned(mis_request(g, 0.2), 1));
  memory.add(run.trace);
  const std::uint64_t budget = run.trace.config.memory_budget_words;
  const bool clique_ok = validate_clique(run.vertices, g).feasible && !run.trace.budget_violated &&
                         run.trace.peak_memory <= budget && budget < n * n;
  std::ostringstream d;
  d << ratio(memory.runs - memory.unsound, memory.runs) << " traces sound; dense clique peak " << run.trace.peak_memory
    << " <= budget " << budget << " < n^2 = " << n * n;
  return {memory.unsound == 0 && clique_ok, d.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int shell(const std::string& cmd) { return std::system(cmd.c_str()); }

Result determinism() {
  const fs::path dir = fs::temp_directory_path() / ("lrmr_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = LRMR_CLI_PATH;
  auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
  const fs::path graph = dir / "g.graph", cover = dir / "c.sc";
  bool ok = shell(cli + " generate graph --n 96 --c 3/10 --hi 20 --seed 7 --out " + q(graph) + " > /dev/null") == 0 &&
            shell(cli + " generate setcover --n 40 --m 200 --density 0.05 --hi 20 --seed 7 --out " + q(cover) + " > /dev/null") == 0;
  const std::vector<std::string> commands = {
      "run match-2 " + q(graph) + " --seed 3",
      "run vc-2 " + q(graph) + " --seed 3",
      "run bmatch " + q(graph) + " --epsilon 1/10 --b 2 --seed 3",
      "run mis-simple " + q(graph) + " --seed 3",
      "run mis-fast " + q(graph) + " --seed 3",
      "run clique " + q(graph) + " --seed 3",
      "run colour-v " + q(graph) + " --seed 3",
      "run colour-e " + q(graph) + " --seed 3 --machines 5",
      "run sc-f " + q(cover) + " --seed 3 --eta 40",
      "run sc-lnD " + q(cover) + " --epsilon 1/10 --seed 3 --preprocess",
  };
  std::uint64_t same = 0;
  for (std::size_t k = 0; k < commands.size() && ok; ++k) {
    std::string out[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path report = dir / ("r" + std::to_string(rep) + ".json"), trace = dir / ("t" + std::to_string(rep) + ".json");
      if (shell("MPC_TRACE=verbose " + cli + " " + commands[k] + " --report " + q(report) + " --trace " + q(trace)) != 0) {
        out[rep] = "error " + std::to_string(rep);
        continue;
      }
      out[rep] = slurp(report) + "\n--\n" + slurp(trace);
    }
    same += out[0] == out[1] && out[0].size() > 10;
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return {ok && same == commands.size(), ratio(same, commands.size()) + " commands byte-identical (report + verbose trace)"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Result()> run;
    double limit_s;
  };
  // Memory soundness runs last so it sees every other criterion's traces.
  const std::vector<Criterion> criteria = {
      {"matching 2-approximation", matching_ratio, 60},
      {"set cover f-approximation", set_cover_f, 0},
      {"eps-greedy set cover", eps_greedy_cover, 0},
      {"b-matching", b_matching, 0},
      {"MIS and clique correctness", mis_and_clique, 0},
      {"colouring validity and bound", colouring, 0},
      {"round complexity", round_complexity, 300},
      {"O(n)-space matching", linear_space_matching, 0},
      {"determinism", determinism, 0},
      {"memory model soundness", memory_soundness, 0},
  };
  const int number[] = {1, 2, 3, 4, 5, 6, 7, 8, 10, 9};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[k].run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[k].limit_s > 0 && secs > criteria[k].limit_s) {
      r.pass = false;
      r.detail += "; over the time limit";
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << number[k] << " " << criteria[k].name << ": "
              << r.detail << " (" << std::fixed << std::setprecision(1) << secs << "s)" << std::defaultfloat << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
