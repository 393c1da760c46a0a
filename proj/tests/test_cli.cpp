#include <filesystem>
#include <set>
#include <unistd.h>

#include "doctest.h"
#include "driver.hpp"
#include "lrmr/errors.hpp"
#include "lrmr/generators.hpp"
#include "lrmr/io.hpp"
#include "support.hpp"

using namespace lrmr;
using namespace lrmr::cli;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() : dir(fs::temp_directory_path() / ("lrmr_cli_" + std::to_string(::getpid()))) { fs::create_directories(dir); }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path write(const std::string& name, const std::string& text) const {
    save(dir / name, text);
    return dir / name;
  }
};

bool has_line(const Verdict& v, const std::string& prefix) {
  for (const auto& l : v.lines) {
    if (l.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("algorithm table") {
    std::set<std::string> names;
    for (const auto& a : algorithms()) {
      names.insert(a.name);
      CHECK_FALSE(a.bound.empty());
    }
    CHECK(names == std::set<std::string>{"sc-f", "vc-2", "match-2", "bmatch", "mis-simple", "mis-fast", "clique", "sc-lnD",
                                         "colour-v", "colour-e"});
    CHECK(algorithms().size() == 10);
    CHECK_THROWS_AS(find_algorithm("nope"), InvalidInput);
  }

  TEST_CASE("run match-2 on P3 reports weight 3") {
    Scratch s;
    const auto path = s.write("p3.graph", "3 2\n0 1 3\n1 2 2\n");
    const auto& alg = find_algorithm("match-2");
    const Instance inst = load_instance(alg, path);
    RunOptions o;
    const Outcome out = execute(alg, inst, o);
    CHECK(out.objective == Rational(3));
    const auto report = make_report(alg, inst, o, out, oracle_value(alg, inst, o));
    CHECK(report["schema"] == 1);
    CHECK(report["objective"]["exact"] == "3");
    CHECK(report["ratio"]["exact"] == "1");
    CHECK(report["instance_digest"] == inst.digest);
  }

  TEST_CASE("run sc-f on a tiny instance uses one iteration") {
    Scratch s;
    const auto path = s.write("tiny.sc", to_text(SetCoverInstance(3, {{0, 1}, {1, 2}, {0, 2}}, {Rational(1), Rational(1), Rational(3)})));
    const auto& alg = find_algorithm("sc-f");
    const Outcome out = execute(alg, load_instance(alg, path), RunOptions{});
    CHECK(out.trace.metrics["iterations"] == 1);
    CHECK(out.objective == Rational(2));
  }

  TEST_CASE("run colour-v on an edgeless graph uses one colour") {
    Scratch s;
    const auto path = s.write("empty.graph", "5 0\n");
    const auto& alg = find_algorithm("colour-v");
    CHECK(execute(alg, load_instance(alg, path), RunOptions{}).objective == Rational(1));
  }

  TEST_CASE("every algorithm runs and verifies against the oracle") {
    Scratch s;
    const auto gpath = s.write("g.graph", to_text(generate_graph(12, Rational(1, 5), 1, 9, 3)));
    const auto cpath = s.write("c.sc", to_text(generate_set_cover(10, 15, 0.3, 1, 9, 3)));
    for (const auto& alg : algorithms()) {
      const Instance inst = load_instance(alg, alg.graph ? gpath : cpath);
      RunOptions o;
      o.epsilon = Rational(1, 10);
      o.b = 2;
      const Outcome out = execute(alg, inst, o);
      const Verdict v = verify(alg, inst, out, o, true);
      CHECK_MESSAGE(v.valid, alg.name);
      CHECK_MESSAGE(v.pass, alg.name);
    }
  }

  TEST_CASE("verify examples") {
    Scratch s;
    const auto& match = find_algorithm("match-2");
    const Instance p3 = load_instance(match, s.write("p3.graph", "3 2\n0 1 3\n1 2 2\n"));
    const Outcome ab = read_solution(match, p3, s.write("ab.sol", "0\n"));
    const Verdict ok = verify(match, p3, ab, RunOptions{}, true);
    CHECK(ok.pass);
    CHECK(has_line(ok, "PASS ratio 1 (1.000000) <= 2"));

    const auto& cover = find_algorithm("sc-f");
    const Instance sc = load_instance(cover, s.write("c.sc", to_text(SetCoverInstance(2, {{0, 1}}, {Rational(1)}))));
    const Verdict bad = verify(cover, sc, read_solution(cover, sc, s.write("none.sol", "")), RunOptions{}, true);
    CHECK_FALSE(bad.pass);
    CHECK(has_line(bad, "FAIL infeasible"));

    const Graph big = generate_graph(30, Rational(1, 5), 1, 5, 2);
    const Instance large = load_instance(match, s.write("big.graph", to_text(big)));
    const Verdict tl = verify(match, large, execute(match, large, RunOptions{}), RunOptions{}, true);
    CHECK(tl.pass);
    CHECK(has_line(tl, "TooLarge"));
    CHECK_FALSE(tl.optimum.has_value());
  }

  TEST_CASE("colour solutions round-trip through files") {
    Scratch s;
    const auto& alg = find_algorithm("colour-e");
    const Instance inst = load_instance(alg, s.write("g.graph", to_text(generate_graph(20, Rational(1, 4), 1, 1, 5))));
    const Outcome out = execute(alg, inst, RunOptions{});
    const Outcome back = read_solution(alg, inst, s.write("col.sol", out.solution_text + "# colours 3\n"));
    CHECK(back.solution == out.solution);
    CHECK(verify(alg, inst, back, RunOptions{}, false).pass);
  }

  TEST_CASE("reports are reproducible") {
    Scratch s;
    const auto path = s.write("g.graph", to_text(generate_graph(64, Rational(3, 10), 1, 20, 9)));
    for (const auto& alg : algorithms()) {
      if (!alg.graph) continue;
      const Instance inst = load_instance(alg, path);
      RunOptions o;
      o.seed = 5;
      o.epsilon = Rational(1, 5);
      const Outcome a = execute(alg, inst, o);
      const Outcome b = execute(alg, inst, o);
      CHECK(make_report(alg, inst, o, a, std::nullopt).dump() == make_report(alg, inst, o, b, std::nullopt).dump());
      CHECK(a.trace.to_json().dump() == b.trace.to_json().dump());
    }
  }

  TEST_CASE("approximation factor convention") {
    CHECK(approximation_factor(Goal::Minimize, Rational(6), Rational(4)) == Rational(3, 2));
    CHECK(approximation_factor(Goal::Maximize, Rational(4), Rational(6)) == Rational(3, 2));
  }

  TEST_CASE("missing epsilon is reported") {
    Scratch s;
    const auto& alg = find_algorithm("bmatch");
    const Instance inst = load_instance(alg, s.write("p3.graph", "3 2\n0 1 3\n1 2 2\n"));
    CHECK_THROWS_AS(execute(alg, inst, RunOptions{}), InvalidInput);
  }
}
