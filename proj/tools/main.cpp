#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "driver.hpp"
#include "lrmr/errors.hpp"
#include "lrmr/generators.hpp"
#include "lrmr/io.hpp"
#include "lrmr/mpc/trace.hpp"

namespace {

using namespace lrmr;
using namespace lrmr::cli;

enum Exit : int { kOk = 0, kError = 1, kRetries = 2, kInfeasible = 3 };

struct Flags {
  RunOptions run;
  std::string epsilon;
  std::optional<double> c;
  std::optional<std::uint64_t> eta, budget, kappa;
  std::optional<std::uint32_t> machines, fanout;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--mu", f.run.mu, "memory exponent")->capture_default_str();
  cmd->add_option("--c", f.c, "density exponent (derived from the instance when omitted)");
  cmd->add_option("--eta", f.eta, "per-machine sample budget");
  cmd->add_option("--epsilon", f.epsilon, "epsilon as p/q or decimal (bmatch, sc-lnD)");
  cmd->add_option("--b", f.run.b, "uniform vertex capacity for bmatch")->capture_default_str();
  cmd->add_option("--seed", f.run.seed, "base seed")->capture_default_str();
  cmd->add_option("--retries", f.run.retries, "extra attempts after a declared failure")->capture_default_str();
  cmd->add_option("--machines", f.machines, "machine count override");
  cmd->add_option("--fanout", f.fanout, "broadcast tree fanout override");
  cmd->add_option("--budget", f.budget, "per-machine memory budget in words");
  cmd->add_option("--kappa", f.kappa, "group count for colour-v / colour-e");
  cmd->add_flag("--free-broadcast", f.run.free_broadcast, "do not charge tree rounds");
  cmd->add_flag("--preprocess", f.run.preprocess, "weight preprocessing for sc-lnD");
}

RunOptions finish(const Flags& f) {
  RunOptions o = f.run;
  o.c = f.c;
  o.eta = f.eta;
  o.budget = f.budget;
  o.kappa = f.kappa;
  o.machines = f.machines;
  o.fanout = f.fanout;
  if (!f.epsilon.empty()) o.epsilon = Rational::parse(f.epsilon);
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  save(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lrmr: local ratio and hungry-greedy algorithms on a simulated MapReduce cluster"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "list algorithms with their guarantees");

  // generate
  auto* gen = app.add_subcommand("generate", "write a random instance");
  std::string kind, out_path = "-", c_text = "0";
  std::size_t gn = 10, gm = 10;
  double p = 0.5, density = 0.3;
  std::int64_t lo = 1, hi = 10;
  std::uint64_t gseed = 1;
  gen->add_option("kind", kind, "graph | gnp | setcover")->required()->check(CLI::IsMember({"graph", "gnp", "setcover"}));
  gen->add_option("--n", gn, "vertices or sets")->capture_default_str();
  gen->add_option("--m", gm, "ground set size (setcover)")->capture_default_str();
  gen->add_option("--c", c_text, "edge exponent, |E| = floor(n^{1+c}) (graph)")->capture_default_str();
  gen->add_option("--p", p, "edge probability (gnp)")->capture_default_str();
  gen->add_option("--density", density, "membership probability (setcover)")->capture_default_str();
  gen->add_option("--lo", lo, "smallest weight")->capture_default_str();
  gen->add_option("--hi", hi, "largest weight")->capture_default_str();
  gen->add_option("--seed", gseed, "seed")->capture_default_str();
  gen->add_option("--out", out_path, "output file, - for stdout")->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "run one algorithm and print a JSON report");
  std::string alg_name, instance_path, trace_path, report_path = "-", solution_path;
  bool with_oracle = false;
  Flags rf;
  run->add_option("algorithm", alg_name, "see --list")->required();
  run->add_option("instance", instance_path, "instance file")->required()->check(CLI::ExistingFile);
  run->add_option("--trace", trace_path, "write the round trace JSON here");
  run->add_option("--report", report_path, "report destination, - for stdout")->capture_default_str();
  run->add_option("--solution", solution_path, "write the solution in text form here");
  run->add_flag("--oracle", with_oracle, "also compute the brute-force optimum");
  add_run_flags(run, rf);

  // verify
  auto* ver = app.add_subcommand("verify", "check a solution, optionally against the brute-force optimum");
  std::string v_alg, v_instance, v_solution;
  bool against = false;
  Flags vf;
  ver->add_option("algorithm", v_alg, "algorithm whose output is checked")->required();
  ver->add_option("instance", v_instance, "instance file")->required()->check(CLI::ExistingFile);
  ver->add_option("solution", v_solution, "solution file; the algorithm is run when omitted");
  ver->add_flag("--against-oracle", against, "compare with the brute-force optimum");
  add_run_flags(ver, vf);

  // bench
  auto* bench = app.add_subcommand("bench", "seed sweep, CSV on stdout");
  std::string b_alg, b_instance;
  std::uint32_t seeds = 10;
  bool b_oracle = false;
  Flags bf;
  bench->add_option("algorithm", b_alg, "see --list")->required();
  bench->add_option("instance", b_instance, "instance file")->required()->check(CLI::ExistingFile);
  bench->add_option("--seeds", seeds, "number of seeds")->capture_default_str();
  bench->add_flag("--oracle", b_oracle, "fill the ratio column from the brute-force optimum");
  add_run_flags(bench, bf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (list) {
      for (const AlgorithmInfo& a : algorithms()) std::cout << a.name << '\t' << a.bound << '\n';
      return kOk;
    }
    if (gen->parsed()) {
      std::string text;
      if (kind == "graph") text = to_text(generate_graph(gn, Rational::parse(c_text), lo, hi, gseed));
      if (kind == "gnp") text = to_text(generate_gnp(gn, p, lo, hi, gseed));
      if (kind == "setcover") text = to_text(generate_set_cover(gn, gm, density, lo, hi, gseed));
      write_file(out_path, text);
      if (out_path != "-") std::cout << digest(text) << '\n';
      return kOk;
    }
    if (run->parsed()) {
      const AlgorithmInfo& alg = find_algorithm(alg_name);
      const RunOptions opts = finish(rf);
      const Instance inst = load_instance(alg, instance_path);
      Outcome out = execute(alg, inst, opts);
      std::optional<Rational> optimum;
      if (with_oracle) optimum = oracle_value(alg, inst, opts);
      write_file(report_path, make_report(alg, inst, opts, out, optimum).dump(2) + '\n');
      if (!trace_path.empty()) save(trace_path, out.trace.to_json().dump(2) + '\n');
      if (!solution_path.empty()) {
        std::string text = out.solution_text;
        if (alg.goal == Goal::Colours) text += "# colours " + out.objective.str() + '\n';
        save(solution_path, text);
      }
      return kOk;
    }
    if (ver->parsed()) {
      const AlgorithmInfo& alg = find_algorithm(v_alg);
      const RunOptions opts = finish(vf);
      const Instance inst = load_instance(alg, v_instance);
      Outcome out = v_solution.empty() ? execute(alg, inst, opts) : read_solution(alg, inst, v_solution);
      const Verdict v = verify(alg, inst, out, opts, against);
      for (const std::string& line : v.lines) std::cout << line << '\n';
      return v.pass ? kOk : kError;
    }
    if (bench->parsed()) {
      const AlgorithmInfo& alg = find_algorithm(b_alg);
      RunOptions opts = finish(bf);
      const Instance inst = load_instance(alg, b_instance);
      std::optional<Rational> optimum;
      if (b_oracle) optimum = oracle_value(alg, inst, opts);
      std::cout << "seed,rounds,peak_memory,objective,ratio\n";
      const std::uint64_t first = opts.seed;
      for (std::uint32_t k = 0; k < seeds; ++k) {
        opts.seed = first + k;
        const Outcome out = execute(alg, inst, opts);
        std::cout << opts.seed << ',' << out.trace.final_attempt_rounds() << ',' << out.trace.peak_memory << ','
                  << out.objective.str() << ',';
        if (optimum) std::cout << approximation_factor(alg.goal, out.objective, *optimum).decimal(6);
        std::cout << '\n';
      }
      return kOk;
    }
    std::cout << app.help();
    return kOk;
  } catch (const mpc::RetriesExhausted& e) {
    std::cerr << "retries exhausted: " << e.what() << '\n';
    return kRetries;
  } catch (const Uncoverable& e) {
    std::cerr << "infeasible input: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InvalidEpsilon& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
}
