#include "doctest.h"
#include "lrmr/errors.hpp"
#include "lrmr/oracles.hpp"
#include "lrmr/rlr_matching.hpp"
#include "lrmr/validate.hpp"
#include "support.hpp"

using namespace lrmr;

namespace {

std::vector<std::uint32_t> caps(std::size_t n, std::uint32_t b) { return std::vector<std::uint32_t>(n, b); }

}  // namespace

TEST_SUITE("matching") {
  TEST_CASE("small graph runs in one full iteration and replays") {
    const Graph g = test::make_graph(5, {{0, 1, 4}, {1, 2, 7}, {2, 3, 1}, {3, 4, 6}, {0, 4, 2}});
    const auto run = approx_max_matching(g, test::tuned(matching_request(g, 0.2), 1));
    CHECK(run.stats.iterations == 1);
    CHECK(run.stats.full[0]);
    const auto seq = lr_matching_seq(g, run.stats.stack);
    CHECK(seq.matching.edges == run.matching.edges);
    CHECK(seq.stack == run.stats.stack);
    CHECK(seq.phi == run.stats.phi);
  }

  TEST_CASE("P3 gives weight 3 on every seed") {
    const Graph g = test::make_graph(3, {{0, 1, 3}, {1, 2, 2}});
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto run = approx_max_matching(g, test::tuned(matching_request(g, 0.2), seed, 2, 1));
      CHECK(run.weight == Rational(3));
      CHECK(run.matching.edges == std::vector<EdgeId>{0});
    }
  }

  TEST_CASE("empty graph") {
    const Graph g(4, {});
    const auto run = approx_max_matching(g, test::tuned(matching_request(g, 0.2), 1));
    CHECK(run.matching.edges.empty());
    CHECK(run.weight == Rational(0));
  }

  TEST_CASE("brute-force harness: 200 graphs, 5 seeds each") {
    Rng rng(2024);
    int runs = 0, good = 0;
    for (int t = 0; t < 200; ++t) {
      const Graph g = test::small_random_graph(rng, 12, 16, 10);
      const Rational opt = brute_force_matching(g).value;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const std::uint32_t machines = 1 + static_cast<std::uint32_t>(rng.below(4));
        const std::uint64_t eta = 1 + rng.below(4);
        const auto run = approx_max_matching(g, test::tuned(matching_request(g, 0.2), seed, machines, eta));
        ++runs;
        const auto rep = validate(run.matching, g);
        CHECK(rep.feasible);
        CHECK(rep.objective == run.weight);
        good += Rational(2) * run.weight >= opt;
        CHECK(lr_matching_seq(g, run.stats.stack).matching.edges == run.matching.edges);
        CHECK(test::memory_sound(run.trace));
        for (std::size_t i = 1; i < run.stats.alive.size(); ++i) CHECK(run.stats.alive[i] <= run.stats.alive[i - 1]);
      }
    }
    CHECK(runs == 1000);
    CHECK(good == 1000);
  }

  TEST_CASE("b-matching examples") {
    const Graph tri = test::complete_graph(3);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Rational eps(1, 10);
      const auto b = caps(3, 2);
      const auto run = approx_b_matching(tri, b, eps, test::tuned(b_matching_request(tri, b, eps, 0.2), seed, 2));
      CHECK(run.weight == Rational(3));
    }
    const Graph one = test::make_graph(2, {{0, 1, 5}});
    for (std::uint32_t b : {1u, 2u, 5u}) {
      for (const Rational& eps : {Rational(1, 100), Rational(1), Rational(7, 3)}) {
        const auto bv = caps(2, b);
        const auto run = approx_b_matching(one, bv, eps, test::tuned(b_matching_request(one, bv, eps, 0.2), 3));
        CHECK(run.matching.edges == std::vector<EdgeId>{0});
      }
    }
    CHECK_THROWS_AS(approx_b_matching(one, caps(2, 1), Rational(0), test::tuned(matching_request(one, 0.2), 1)),
                    InvalidEpsilon);
    CHECK_THROWS_AS(approx_b_matching(one, caps(2, 1), Rational(-1), test::tuned(matching_request(one, 0.2), 1)),
                    InvalidEpsilon);
  }

  TEST_CASE("b-matching ratio and replay on random graphs") {
    Rng rng(77);
    for (int t = 0; t < 150; ++t) {
      const Graph g = test::small_random_graph(rng, 10, 16, 10);
      std::vector<std::uint32_t> b(g.n());
      std::uint32_t bmax = 1;
      for (auto& x : b) bmax = std::max(bmax, x = 1 + static_cast<std::uint32_t>(rng.below(3)));
      const Rational eps(1 + static_cast<std::int64_t>(rng.below(5)), 10);
      const Rational opt = brute_force_matching(g, b).value;
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto cfg = test::tuned(b_matching_request(g, b, eps, 0.2), seed, 1 + static_cast<std::uint32_t>(rng.below(4)),
                                     1 + rng.below(3));
        const auto run = approx_b_matching(g, b, eps, cfg);
        CHECK(validate(run.matching, g, b).feasible);
        CHECK(run.weight * bmatching_ratio_bound(bmax, eps) >= opt);
        CHECK(lr_bmatching_seq(g, b, eps, run.stats.stack).matching.edges == run.matching.edges);
        CHECK(test::memory_sound(run.trace));
      }
    }
  }

  TEST_CASE("b = 1 still meets 2 + 2 eps") {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
      const Graph g = test::small_random_graph(rng, 10, 16, 10);
      const auto b = caps(g.n(), 1);
      const Rational eps(1, 4);
      const auto run = approx_b_matching(g, b, eps, test::tuned(b_matching_request(g, b, eps, 0.2), 1 + rng.below(50), 3, 2));
      CHECK(run.weight * (Rational(2) + Rational(2) * eps) >= brute_force_matching(g).value);
    }
  }

  TEST_CASE("b-matching budget grows with b ln(1/delta)") {
    const Graph g = test::complete_graph(6);
    const Rational eps(1, 10);
    CHECK(log_inverse_delta(eps) == doctest::Approx(std::log(11.0)));
    const auto small = mpc::derive_config(b_matching_request(g, caps(6, 1), eps, 0.2));
    const auto big = mpc::derive_config(b_matching_request(g, caps(6, 4), eps, 0.2));
    CHECK(big.memory_budget_words > small.memory_budget_words);
  }
}
