#include <numeric>

#include "doctest.h"
#include "lrmr/errors.hpp"
#include "lrmr/generators.hpp"
#include "lrmr/hungry_greedy.hpp"
#include "lrmr/oracles.hpp"
#include "lrmr/validate.hpp"
#include "support.hpp"

using namespace lrmr;

namespace {

using Solver = MisRun (*)(const Graph&, const mpc::ClusterConfig&);

Graph two_triangles() { return test::unit_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

void check_mis_harness(Solver solve, std::uint64_t base_seed) {
  Rng rng(base_seed);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(39);
    const double p = rng.uniform01() * 0.6;
    const Graph g = generate_gnp(n, p, 1, 1, rng.next());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const double mu = 0.1 + 0.4 * rng.uniform01();
      INFO("n=", n, " m=", g.m(), " mu=", mu, " seed=", seed);
      const auto run = solve(g, test::tuned(mis_request(g, mu), seed, 1 + static_cast<std::uint32_t>(rng.below(4))));
      const auto rep = validate_mis(run.vertices, g);
      CHECK_MESSAGE(rep.feasible, rep.message);
      CHECK(test::sorted_unique(run.vertices));
      CHECK(test::memory_sound(run.trace));
    }
  }
}

}  // namespace

TEST_SUITE("hungry") {
  TEST_CASE("edgeless graph returns every vertex") {
    const Graph g(7, {});
    for (Solver s : {Solver{mis_simple}, Solver{mis_fast}}) {
      const auto run = s(g, test::tuned(mis_request(g, 0.2), 1));
      CHECK(run.vertices == std::vector<VertexId>{0, 1, 2, 3, 4, 5, 6});
    }
  }

  TEST_CASE("star gives the centre or all leaves") {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId v = 1; v < 12; ++v) edges.emplace_back(0, v);
    const Graph star = test::unit_graph(12, edges);
    std::vector<VertexId> leaves(11);
    std::iota(leaves.begin(), leaves.end(), 1);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      for (Solver s : {Solver{mis_simple}, Solver{mis_fast}}) {
        const auto run = s(star, test::tuned(mis_request(star, 0.3), seed, 3));
        CHECK((run.vertices == std::vector<VertexId>{0} || run.vertices == leaves));
      }
    }
  }

  TEST_CASE("mis_simple harness") { check_mis_harness(mis_simple, 41); }
  TEST_CASE("mis_fast harness") { check_mis_harness(mis_fast, 42); }

  TEST_CASE("sparse input skips straight to the central greedy") {
    const Graph g = test::unit_graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {0, 9}});
    const auto run = mis_fast(g, test::tuned(mis_request(g, 0.2), 1));
    CHECK(run.stats.iterations == 0);
    CHECK(run.vertices == greedy_mis_seq(g));
  }

  TEST_CASE("two disjoint triangles") {
    const Graph g = two_triangles();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      for (Solver s : {Solver{mis_simple}, Solver{mis_fast}}) {
        const auto run = s(g, test::tuned(mis_request(g, 0.2), seed));
        REQUIRE(run.vertices.size() == 2);
        CHECK(run.vertices[0] < 3);
        CHECK(run.vertices[1] >= 3);
      }
    }
  }

  TEST_CASE("non-positive mu is rejected") {
    const Graph g = two_triangles();
    auto cfg = test::tuned(mis_request(g, 0.2), 1);
    cfg.mu = 0.0;
    CHECK_THROWS_AS(mis_simple(g, cfg), InvalidInput);
    CHECK_THROWS_AS(mis_fast(g, cfg), InvalidInput);
  }

  TEST_CASE("independent set grows the dense phases") {
    const Graph g = generate_graph(256, Rational(1, 2), 1, 1, 5);
    const auto run = mis_simple(g, test::tuned(mis_request(g, 0.2), 2));
    CHECK(validate_mis(run.vertices, g).feasible);
    CHECK(run.stats.iterations > 0);
    const auto fast = mis_fast(g, test::tuned(mis_request(g, 0.2), 2));
    CHECK(validate_mis(fast.vertices, g).feasible);
    REQUIRE(fast.stats.edges.size() == fast.stats.added.size());
    for (std::size_t k = 1; k < fast.stats.edges.size(); ++k) {
      if (fast.stats.added[k - 1] > 0) CHECK(fast.stats.edges[k] < fast.stats.edges[k - 1]);
    }
  }

  TEST_CASE("relabel") {
    const std::vector<std::uint8_t> some{0, 0, 1, 0, 0, 1};
    const Relabel r = relabel_active(some);
    CHECK(r.k == 2);
    CHECK(r.sigma == std::vector<std::uint32_t>{3, 4, 1, 5, 6, 2});
    const Relabel all = relabel_active(std::vector<std::uint8_t>(4, 1));
    CHECK(all.k == 4);
    CHECK(all.sigma == std::vector<std::uint32_t>{1, 2, 3, 4});
    CHECK(relabel_active(std::vector<std::uint8_t>(3, 0)).k == 0);
  }

  TEST_CASE("clique examples") {
    const Graph k5 = test::complete_graph(5);
    CHECK(maximal_clique(k5, test::tuned(mis_request(k5, 0.2), 1)).vertices == std::vector<VertexId>{0, 1, 2, 3, 4});
    const Graph empty(6, {});
    CHECK(maximal_clique(empty, test::tuned(mis_request(empty, 0.2), 1)).vertices.size() == 1);
    const Graph c5 = test::cycle_graph(5);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto k = maximal_clique(c5, test::tuned(mis_request(c5, 0.2), seed));
      REQUIRE(k.vertices.size() == 2);
      CHECK(c5.has_edge(k.vertices[0], k.vertices[1]));
      CHECK(validate_clique(k.vertices, c5).feasible);
    }
  }

  TEST_CASE("clique is an MIS of the explicit complement") {
    Rng rng(64);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 2 + rng.below(63);
      const Graph g = generate_gnp(n, 0.3 + 0.6 * rng.uniform01(), 1, 1, rng.next());
      const auto run = maximal_clique(g, test::tuned(mis_request(g, 0.2), 1 + rng.below(9), 1 + static_cast<std::uint32_t>(rng.below(3))));
      CHECK(validate_clique(run.vertices, g).feasible);
      CHECK(validate_mis(run.vertices, test::complement(g)).feasible);
      CHECK(test::memory_sound(run.trace));
    }
  }

  TEST_CASE("dense clique run stays below the full complement") {
    const Graph g = generate_gnp(400, 0.9, 1, 1, 8);
    const auto run = maximal_clique(g, test::tuned(mis_request(g, 0.2), 1));
    CHECK(validate_clique(run.vertices, g).feasible);
    CHECK_FALSE(run.trace.budget_violated);
    CHECK(run.trace.peak_memory < 400ull * 400ull);
  }
}
