#include <numeric>

#include "doctest.h"
#include "lrmr/errors.hpp"
#include "lrmr/oracles.hpp"
#include "lrmr/validate.hpp"
#include "support.hpp"

using namespace lrmr;

namespace {

SetCoverInstance three_sets() {
  return SetCoverInstance(3, {{0, 1}, {1, 2}, {0, 2}}, {Rational(1), Rational(1), Rational(3)});
}

SetCoverInstance four_sets() {
  return SetCoverInstance(3, {{0, 1, 2}, {0}, {1}, {2}}, {Rational(1), Rational(2, 5), Rational(2, 5), Rational(2, 5)});
}

Graph p3() { return test::make_graph(3, {{0, 1, 3}, {1, 2, 2}}); }

std::vector<std::uint32_t> caps(std::size_t n, std::uint32_t b) { return std::vector<std::uint32_t>(n, b); }

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("local ratio set cover on the three-set instance") {
    const auto inst = three_sets();
    const std::vector<ElementId> order{0, 1, 2};
    const Cover c = lr_set_cover_seq(inst, order);
    CHECK(c.sets == std::vector<SetId>{0, 1});
    CHECK(inst.weight_of(c.sets) == Rational(2));
    CHECK(brute_force_set_cover(inst).value == Rational(2));
    CHECK(test::enumerate_min_cover(inst) == Rational(2));
  }

  TEST_CASE("local ratio set cover corner cases") {
    CHECK(lr_set_cover_seq(SetCoverInstance(0, {}, {})).sets.empty());
    const SetCoverInstance single(5, {{0, 1, 2, 3, 4}}, {Rational(7)});
    CHECK(lr_set_cover_seq(single).sets == std::vector<SetId>{0});
    CHECK_THROWS_AS(lr_set_cover_seq(SetCoverInstance(2, {{0}}, {Rational(1)})), Uncoverable);
  }

  TEST_CASE("local ratio matching on P3 in both orders") {
    const Graph g = p3();
    const std::vector<EdgeId> ab_first{0, 1}, bc_first{1, 0};
    const auto r1 = lr_matching_seq(g, ab_first);
    CHECK(r1.stack == std::vector<EdgeId>{0});
    CHECK(r1.matching.edges == std::vector<EdgeId>{0});
    const auto r2 = lr_matching_seq(g, bc_first);
    CHECK(r2.stack == std::vector<EdgeId>{1, 0});
    CHECK(r2.matching.edges == std::vector<EdgeId>{0});
    CHECK(brute_force_matching(g).value == Rational(3));
    CHECK(lr_matching_seq(Graph(4, {})).matching.edges.empty());
  }

  TEST_CASE("b-matching oracle examples") {
    const Graph tri = test::complete_graph(3);
    const auto r = lr_bmatching_seq(tri, caps(3, 2), Rational(0));
    CHECK(tri.weight_of(r.matching.edges) == Rational(3));
    CHECK(brute_force_matching(tri, caps(3, 2)).value == Rational(3));
    CHECK(test::enumerate_max_matching(tri, 2) == Rational(3));
    const Graph one = test::make_graph(2, {{0, 1, 5}});
    CHECK(lr_bmatching_seq(one, caps(2, 3), Rational(1, 10)).matching.edges == std::vector<EdgeId>{0});
    CHECK(bmatching_ratio_bound(1, Rational(1, 10)) == Rational(11, 5));
    CHECK(bmatching_ratio_bound(3, Rational(0)) == Rational(7, 3));
  }

  TEST_CASE("eps-greedy on the four-set instance") {
    const auto inst = four_sets();
    CHECK(eps_greedy_set_cover_seq(inst, Rational(0)).sets == std::vector<SetId>{0});
    CHECK(eps_greedy_set_cover_seq(inst, Rational(1)).sets == std::vector<SetId>{0});
    CHECK(test::enumerate_min_cover(inst) == Rational(1));
    const SetCoverInstance single(1, {{0}}, {Rational(2)});
    CHECK(eps_greedy_set_cover_seq(single, Rational(1, 2)).sets == std::vector<SetId>{0});
  }

  TEST_CASE("sequential colourings") {
    CHECK(greedy_vertex_colouring_seq(test::complete_graph(3)).colour_count() == 3);
    CHECK(greedy_vertex_colouring_seq(Graph(5, {})).colour_count() == 1);
    const Graph star = test::unit_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(greedy_vertex_colouring_seq(star).colour_count() == 2);
    CHECK(misra_gries_edge_colouring_seq(test::unit_graph(2, {{0, 1}})).colour_count() == 1);
    CHECK(misra_gries_edge_colouring_seq(test::unit_graph(3, {{0, 1}, {1, 2}})).colour_count() == 2);
    CHECK(misra_gries_edge_colouring_seq(test::complete_graph(3)).colour_count() == 3);
  }

  TEST_CASE("Misra-Gries stays within max degree + 1 and is proper") {
    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
      const Graph g = test::small_random_graph(rng, 14, 60, 1);
      const Colouring c = misra_gries_edge_colouring_seq(g);
      CHECK(validate(c, g).feasible);
      CHECK(c.colour_count() <= g.max_degree() + 1);
      const Colouring v = greedy_vertex_colouring_seq(g);
      CHECK(validate(v, g).feasible);
      CHECK(v.colour_count() <= g.max_degree() + 1);
    }
  }

  TEST_CASE("brute force agrees with an independent enumeration") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
      const auto inst = test::small_random_cover(rng, 8, 8, 9);
      CHECK(brute_force_set_cover(inst).value == test::enumerate_min_cover(inst));
      const Graph g = test::small_random_graph(rng, 8, 12, 9);
      CHECK(brute_force_matching(g).value == test::enumerate_max_matching(g));
      CHECK(brute_force_matching(g, caps(g.n(), 2)).value == test::enumerate_max_matching(g, 2));
    }
    CHECK(brute_force_matching(Graph(3, {})).value == Rational(0));
    CHECK(brute_force_set_cover(SetCoverInstance(0, {}, {})).value == Rational(0));
    std::vector<std::vector<ElementId>> many(23, std::vector<ElementId>{0});
    CHECK_THROWS_AS(brute_force_set_cover(SetCoverInstance(1, many, std::vector<Rational>(23, Rational(1)))), TooLarge);
  }

  TEST_CASE("sequential guarantees hold for every order") {
    Rng rng(99);
    for (int t = 0; t < 150; ++t) {
      const auto inst = test::small_random_cover(rng, 8, 8, 10);
      std::vector<ElementId> order(inst.m());
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      const Rational opt = brute_force_set_cover(inst).value;
      CHECK(inst.weight_of(lr_set_cover_seq(inst, order).sets) <= Rational(static_cast<std::int64_t>(inst.f())) * opt);
      const Rational eps(1, 1 + static_cast<std::int64_t>(rng.below(4)));
      CHECK(inst.weight_of(eps_greedy_set_cover_seq(inst, eps).sets) <=
            (Rational(1) + eps) * harmonic(inst.delta()) * opt);

      const Graph g = test::small_random_graph(rng, 8, 12, 10);
      std::vector<EdgeId> eo(g.m());
      std::iota(eo.begin(), eo.end(), 0);
      rng.shuffle(eo);
      const Rational mopt = brute_force_matching(g).value;
      const auto lr = lr_matching_seq(g, eo);
      CHECK(Rational(2) * g.weight_of(lr.matching.edges) >= mopt);
      const auto naive = lr_matching_naive(g, eo);
      CHECK(naive.stack == lr.stack);
      CHECK(naive.matching.edges == lr.matching.edges);

      const std::uint32_t b = 1 + static_cast<std::uint32_t>(rng.below(3));
      const auto bm = lr_bmatching_seq(g, caps(g.n(), b), eps, eo);
      CHECK(g.weight_of(bm.matching.edges) * bmatching_ratio_bound(b, eps) >=
            brute_force_matching(g, caps(g.n(), b)).value);
      const auto b1 = lr_bmatching_seq(g, caps(g.n(), 1), Rational(0), eo);
      CHECK(b1.matching.edges == lr.matching.edges);
    }
  }

  TEST_CASE("stack unwind never skips a free edge") {
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
      const Graph g = test::small_random_graph(rng, 10, 20, 10);
      const auto lr = lr_matching_seq(g);
      std::vector<char> used(g.n(), 0);
      for (EdgeId e : lr.matching.edges) used[g.edge(e).u] = used[g.edge(e).v] = 1;
      for (EdgeId e : lr.stack) CHECK((used[g.edge(e).u] || used[g.edge(e).v]));
    }
  }

  TEST_CASE("harmonic numbers are exact") {
    CHECK(harmonic(1) == Rational(1));
    CHECK(harmonic(3) == Rational(11, 6));
    CHECK(harmonic(4) == Rational(25, 12));
  }
}
