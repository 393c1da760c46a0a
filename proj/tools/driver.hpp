#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lrmr/instances.hpp"
#include "lrmr/mpc/trace.hpp"

namespace lrmr::cli {

enum class Goal { Minimize, Maximize, Maximal, Colours };

struct AlgorithmInfo {
  std::string name;
  bool graph = true;
  Goal goal = Goal::Minimize;
  std::string bound;
};

const std::vector<AlgorithmInfo>& algorithms();
/// InvalidInput for unknown names.
const AlgorithmInfo& find_algorithm(std::string_view name);

struct RunOptions {
  double mu = 0.2;
  std::optional<double> c;
  std::optional<std::uint64_t> eta;
  std::optional<std::uint32_t> machines;
  std::optional<std::uint32_t> fanout;
  std::optional<std::uint64_t> budget;
  std::optional<Rational> epsilon;
  std::uint32_t b = 1;
  std::uint64_t seed = 1;
  std::uint32_t retries = 3;
  bool free_broadcast = false;
  std::optional<std::uint64_t> kappa;
  bool preprocess = false;
};

struct Instance {
  std::variant<Graph, SetCoverInstance> data;
  std::string digest;

  const Graph& graph() const { return std::get<Graph>(data); }
  const SetCoverInstance& set_cover() const { return std::get<SetCoverInstance>(data); }
};

Instance load_instance(const AlgorithmInfo& alg, const std::filesystem::path& path);

struct Outcome {
  /// Ids (or [id, group, colour] triples) of the solution.
  nlohmann::json solution;
  std::string solution_text;
  Rational objective;
  mpc::RunTrace trace;
  /// Guaranteed approximation factor for this instance, when the algorithm has one.
  std::optional<Rational> bound;
  nlohmann::json extra = nlohmann::json::object();
};

/// Runs the algorithm under the cluster regime the options describe.
Outcome execute(const AlgorithmInfo& alg, const Instance& inst, const RunOptions& opts);

/// Brute-force optimum. TooLarge past the caps; nullopt for algorithms without one.
std::optional<Rational> oracle_value(const AlgorithmInfo& alg, const Instance& inst, const RunOptions& opts);

/// ALG/OPT for minimization, OPT/ALG for maximization.
Rational approximation_factor(Goal goal, const Rational& objective, const Rational& optimum);

nlohmann::json make_report(const AlgorithmInfo& alg, const Instance& inst, const RunOptions& opts, const Outcome& out,
                           const std::optional<Rational>& optimum);

/// Parses a solution file written by `run --solution`.
Outcome read_solution(const AlgorithmInfo& alg, const Instance& inst, const std::filesystem::path& path);

struct Verdict {
  bool valid = false;
  std::string message;
  std::optional<Rational> optimum;
  std::optional<Rational> factor;
  bool pass = false;
  std::vector<std::string> lines;
};

Verdict verify(const AlgorithmInfo& alg, const Instance& inst, const Outcome& out, const RunOptions& opts,
               bool against_oracle);

nlohmann::json rational_json(const Rational& r);

}  // namespace lrmr::cli
