// Instrumented checks of the high-probability guarantees at desk scale. Each
// check counts passing seeds and asserts the stated fraction.
#include <cmath>

#include "doctest.h"
#include "lrmr/colouring.hpp"
#include "lrmr/generators.hpp"
#include "lrmr/hungry_greedy.hpp"
#include "lrmr/parallel_set_cover.hpp"
#include "lrmr/rlr_matching.hpp"
#include "lrmr/rlr_set_cover.hpp"
#include "lrmr/validate.hpp"
#include "support.hpp"

using namespace lrmr;

namespace {

struct Tally {
  int ok = 0;
  int total = 0;
  void add(bool pass) {
    ok += pass;
    ++total;
  }
  bool at_least(double fraction) const { return ok >= fraction * total; }
};

std::ostream& operator<<(std::ostream& os, const Tally& t) { return os << t.ok << "/" << t.total; }

}  // namespace

TEST_SUITE("whp") {
  TEST_CASE("vertex cover sampling filters the alive edges") {
    const Graph g = generate_graph(1024, Rational(3, 5), 1, 20, 11);
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto run = vertex_cover_2approx(g, {}, test::tuned(vc_request(g, 0.2), seed));
      const double n = static_cast<double>(g.n());
      const bool retried = run.trace.attempts.size() > 1;
      for (std::size_t r = 0; r + 1 < run.stats.alive.size(); ++r) {
        if (run.stats.p[r] >= 1.0) continue;
        ++checked;
        const bool fine = static_cast<double>(run.stats.alive[r + 1]) < 2.0 * n / run.stats.p[r];
        CHECK_MESSAGE((fine || retried), "seed ", seed, " iteration ", r);
      }
    }
    MESSAGE("sampled iterations checked: ", checked);
    CHECK(checked > 0);
  }

  TEST_CASE("matching degree shrink and first-phase cap") {
    const double mu = 0.2;
    const Graph g = generate_graph(2048, Rational(3, 5), 1, 100, 21);
    const double n = static_cast<double>(g.n());
    const auto cfg0 = mpc::derive_config(matching_request(g, mu));
    Tally shrink, cap;
    int late = 0, second = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto run = approx_max_matching(g, test::tuned(matching_request(g, mu), seed));
      const auto& d = run.stats.max_degree;
      bool ok = true;
      // 1-based iteration i > 2 only
      for (std::size_t i = 2; i + 1 < d.size(); ++i) {
        ok = ok && static_cast<double>(d[i + 1]) <= d[i] / std::pow(n, mu / 4);
        ++late;
      }
      shrink.add(ok);
      second += d.size() >= 2;
      cap.add(d.size() < 2 || static_cast<double>(d[1]) <= std::pow(n, cfg0.c) + 1e-9);
    }
    MESSAGE("degree shrink ", shrink, " (", late, " late iterations), first-phase cap ", cap, " (", second, " runs reached a second iteration)");
    CHECK(shrink.at_least(0.9));
    CHECK(cap.at_least(0.9));
  }

  TEST_CASE("matching with eta = n contracts the alive edges") {
    const Graph g = generate_graph(512, Rational(3, 5), 1, 100, 31);
    double sum = 0;
    int steps = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto run = approx_max_matching(g, test::tuned(matching_request(g, 0.2), seed, 0, g.n()));
      const auto& a = run.stats.alive;
      for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        sum += static_cast<double>(a[i + 1]) / static_cast<double>(a[i]);
        ++steps;
      }
    }
    REQUIRE(steps > 0);
    MESSAGE("mean contraction ", sum / steps, " over ", steps, " iterations");
    CHECK(sum / steps <= 0.99);
  }

  TEST_CASE("hungry-greedy heavy-set and edge shrink") {
    const double mu = 0.2;
    const Graph g = generate_graph(1024, Rational(3, 5), 1, 1, 41);
    const double n = static_cast<double>(g.n());
    Tally heavy, edges;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto simple = mis_simple(g, test::tuned(mis_request(g, mu), seed));
      bool ok = true;
      for (const auto& phase : simple.stats.heavy) {
        for (std::size_t k = 0; k + 1 < phase.size(); ++k) {
          ok = ok && static_cast<double>(phase[k + 1]) <= phase[k] / std::pow(n, mu / 4);
        }
      }
      heavy.add(ok);

      const auto fast = mis_fast(g, test::tuned(mis_request(g, mu), seed));
      const auto& e = fast.stats.edges;
      bool shrink = true;
      for (std::size_t k = 0; k + 1 < e.size(); ++k) {
        shrink = shrink && static_cast<double>(e[k + 1]) <= 2.0 * e[k] / std::pow(n, mu / 8);
        if (fast.stats.added[k] > 0) CHECK(e[k + 1] < e[k]);
      }
      edges.add(shrink);
    }
    MESSAGE("heavy-set shrink ", heavy, ", edge shrink ", edges);
    CHECK(heavy.at_least(0.9));
    CHECK(edges.at_least(0.9));
  }

  TEST_CASE("bucketed set cover potential and inner-iteration budget") {
    const double mu = 0.2;
    const auto inst = generate_set_cover(512, 4096, 0.02, 1, 100, 51);
    const double m = static_cast<double>(inst.m());
    const Rational eps(1, 10);
    Tally drops, budget;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto run = approx_sc_lnDelta(inst, eps, test::tuned(sc_lnDelta_request(inst, mu), seed));
      bool within = true;
      for (const LStage& st : run.stats.stages) {
        const auto& phi = st.phi;
        for (std::size_t k = 0; k + 1 < phi.size(); ++k) {
          CHECK(phi[k + 1] <= phi[k]);
          drops.add(static_cast<double>(phi[k + 1]) <= phi[k] / std::pow(m, mu / 8));
        }
        if (phi.front() > 1) {
          const double cap = 2 * std::ceil(18 * std::log(static_cast<double>(phi.front())) / (mu * std::log(m)));
          within = within && st.iterations <= cap;
        }
      }
      budget.add(within);
    }
    MESSAGE("potential drops ", drops, ", iteration budget ", budget);
    CHECK(drops.total > 0);
    CHECK(drops.at_least(0.9));
    CHECK(budget.at_least(0.9));
  }

  TEST_CASE("colouring group degrees concentrate") {
    const double mu = 0.2;
    const Graph g = generate_graph(4096, Rational(2, 5), 1, 1, 61);
    const double n = static_cast<double>(g.n());
    const double spread = 1 + std::pow(n, -mu / 2) * std::sqrt(6 * std::log(n));
    Tally conc;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto run = vertex_colouring(g, test::tuned(colouring_request(g, mu), seed));
      const double bound = spread * static_cast<double>(g.max_degree()) / static_cast<double>(run.stats.kappa);
      conc.add(static_cast<double>(run.stats.max_group_degree) <= bound);
    }
    MESSAGE("group-degree concentration ", conc);
    CHECK(conc.at_least(0.9));
  }
}
