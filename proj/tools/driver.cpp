#include "driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lrmr/colouring.hpp"
#include "lrmr/errors.hpp"
#include "lrmr/hungry_greedy.hpp"
#include "lrmr/io.hpp"
#include "lrmr/mpc/config.hpp"
#include "lrmr/oracles.hpp"
#include "lrmr/parallel_set_cover.hpp"
#include "lrmr/rlr_matching.hpp"
#include "lrmr/rlr_set_cover.hpp"
#include "lrmr/validate.hpp"

namespace lrmr::cli {

namespace {

mpc::ClusterConfig regime(mpc::ConfigRequest req, const RunOptions& o) {
  req.c = o.c;
  if (o.eta) req.eta = o.eta;
  if (o.machines) req.machine_count = o.machines;
  if (o.fanout) req.fanout = o.fanout;
  if (o.budget) req.memory_budget_words = o.budget;
  req.seed = o.seed;
  req.retry_cap = o.retries;
  req.free_broadcast = o.free_broadcast;
  return mpc::derive_config(req);
}

const Rational& need_epsilon(const RunOptions& o, const AlgorithmInfo& alg) {
  if (!o.epsilon) throw InvalidInput(alg.name + " needs --epsilon");
  return *o.epsilon;
}

std::vector<std::uint32_t> capacities(const Graph& g, const RunOptions& o) {
  if (o.b == 0) throw InvalidInput("b must be at least 1");
  return std::vector<std::uint32_t>(g.n(), o.b);
}

template <class Ids>
std::string id_line(const Ids& ids) {
  std::string s;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(ids[k]);
  }
  return s + '\n';
}

template <class Ids>
void set_ids(Outcome& out, const Ids& ids) {
  out.solution = nlohmann::json(ids);
  out.solution_text = id_line(ids);
}

void set_colouring(Outcome& out, const Colouring& col) {
  out.solution = nlohmann::json::array();
  for (std::size_t x = 0; x < col.assignment.size(); ++x) {
    out.solution.push_back({x, col.assignment[x].group, col.assignment[x].colour});
    out.solution_text += std::to_string(x) + ' ' + std::to_string(col.assignment[x].group) + ' ' +
                         std::to_string(col.assignment[x].colour) + '\n';
  }
  out.objective = Rational(static_cast<std::int64_t>(col.colour_count()));
}

Rational count(std::size_t k) { return Rational(static_cast<std::int64_t>(k)); }

std::vector<Rational> unit_weights(const Graph& g) { return std::vector<Rational>(g.n(), Rational(1)); }

Outcome run_colouring(const AlgorithmInfo& alg, const Graph& g, const RunOptions& o) {
  const mpc::ClusterConfig cfg = regime(colouring_request(g, o.mu), o);
  ColouringOptions co;
  co.kappa = o.kappa;
  ColouringRun r = alg.name == "colour-v" ? vertex_colouring(g, cfg, co) : edge_colouring(g, cfg, co);
  Outcome out;
  set_colouring(out, r.colouring);
  out.trace = std::move(r.trace);
  const std::uint64_t delta = g.max_degree();
  out.extra = {{"kappa", r.stats.kappa},
               {"max_group_degree", r.stats.max_group_degree},
               {"max_degree", delta},
               {"colour_cap", r.stats.kappa * (r.stats.max_group_degree + 1)}};
  if (alg.name == "colour-v" && g.n() >= 2) {
    const double n = static_cast<double>(g.n());
    const double factor = 1.0 + std::pow(n, -o.mu / 2.0) * std::sqrt(6.0 * std::log(n)) + std::pow(n, -o.mu);
    out.extra["whp_bound"] = factor * static_cast<double>(delta);
  }
  return out;
}

}  // namespace

const std::vector<AlgorithmInfo>& algorithms() {
  static const std::vector<AlgorithmInfo> list = {
      {"sc-f", false, Goal::Minimize, "f-approximate weighted set cover (f = max element frequency)"},
      {"vc-2", true, Goal::Minimize, "2-approximate minimum vertex cover (unit vertex weights)"},
      {"match-2", true, Goal::Maximize, "2-approximate maximum weight matching"},
      {"bmatch", true, Goal::Maximize, "(3 - 2/max{2,b} + 2 eps)-approximate maximum weight b-matching"},
      {"mis-simple", true, Goal::Maximal, "maximal independent set, O(1/mu^2) rounds"},
      {"mis-fast", true, Goal::Maximal, "maximal independent set, O(c/mu) rounds"},
      {"clique", true, Goal::Maximal, "maximal clique, O(1/mu^2) rounds"},
      {"sc-lnD", false, Goal::Minimize, "(1+eps) H_Delta-approximate weighted set cover"},
      {"colour-v", true, Goal::Colours, "(1 + n^{-mu/2} sqrt(6 ln n) + n^{-mu}) Delta vertex colours w.h.p."},
      {"colour-e", true, Goal::Colours, "(1 + o(1)) Delta edge colours w.h.p."},
  };
  return list;
}

const AlgorithmInfo& find_algorithm(std::string_view name) {
  for (const AlgorithmInfo& a : algorithms()) {
    if (a.name == name) return a;
  }
  throw InvalidInput("unknown algorithm '" + std::string(name) + "'");
}

Instance load_instance(const AlgorithmInfo& alg, const std::filesystem::path& path) {
  Instance inst;
  if (alg.graph) {
    Graph g = load_graph(path);
    inst.digest = digest(to_text(g));
    inst.data = std::move(g);
  } else {
    SetCoverInstance s = load_set_cover(path);
    inst.digest = digest(to_text(s));
    inst.data = std::move(s);
  }
  return inst;
}

Outcome execute(const AlgorithmInfo& alg, const Instance& inst, const RunOptions& o) {
  Outcome out;
  const std::string& a = alg.name;
  if (a == "sc-f") {
    const SetCoverInstance& s = inst.set_cover();
    CoverRun r = approx_sc_f(s, regime(sc_f_request(s, o.mu), o));
    set_ids(out, r.cover.sets);
    out.objective = s.weight_of(r.cover.sets);
    out.bound = count(std::max<std::size_t>(1, s.f()));
    out.trace = std::move(r.trace);
  } else if (a == "sc-lnD") {
    const SetCoverInstance& s = inst.set_cover();
    const Rational& eps = need_epsilon(o, alg);
    LnDeltaOptions lo;
    lo.preprocess = o.preprocess;
    LnDeltaRun r = approx_sc_lnDelta(s, eps, regime(sc_lnDelta_request(s, o.mu), o), lo);
    set_ids(out, r.cover.sets);
    out.objective = s.weight_of(r.cover.sets);
    out.bound = (Rational(1) + eps) * harmonic(std::max<std::size_t>(1, s.delta()));
    if (o.preprocess) out.bound = *out.bound + eps;
    out.trace = std::move(r.trace);
  } else if (a == "vc-2") {
    const Graph& g = inst.graph();
    CoverRun r = vertex_cover_2approx(g, {}, regime(vc_request(g, o.mu), o));
    set_ids(out, r.cover.sets);
    out.objective = count(r.cover.sets.size());
    out.bound = Rational(2);
    out.trace = std::move(r.trace);
  } else if (a == "match-2") {
    const Graph& g = inst.graph();
    MatchingRun r = approx_max_matching(g, regime(matching_request(g, o.mu), o));
    set_ids(out, r.matching.edges);
    out.objective = r.weight;
    out.bound = Rational(2);
    out.trace = std::move(r.trace);
  } else if (a == "bmatch") {
    const Graph& g = inst.graph();
    const Rational& eps = need_epsilon(o, alg);
    const auto b = capacities(g, o);
    MatchingRun r = approx_b_matching(g, b, eps, regime(b_matching_request(g, b, eps, o.mu), o));
    set_ids(out, r.matching.edges);
    out.objective = r.weight;
    out.bound = bmatching_ratio_bound(o.b, eps);
    out.trace = std::move(r.trace);
  } else if (a == "mis-simple" || a == "mis-fast" || a == "clique") {
    const Graph& g = inst.graph();
    const mpc::ClusterConfig cfg = regime(mis_request(g, o.mu), o);
    MisRun r = a == "mis-simple" ? mis_simple(g, cfg) : a == "mis-fast" ? mis_fast(g, cfg) : maximal_clique(g, cfg);
    set_ids(out, r.vertices);
    out.objective = count(r.vertices.size());
    out.trace = std::move(r.trace);
  } else {
    out = run_colouring(alg, inst.graph(), o);
  }
  return out;
}

std::optional<Rational> oracle_value(const AlgorithmInfo& alg, const Instance& inst, const RunOptions& o) {
  const std::string& a = alg.name;
  if (a == "sc-f" || a == "sc-lnD") return brute_force_set_cover(inst.set_cover()).value;
  if (a == "vc-2") {
    const Graph& g = inst.graph();
    return brute_force_set_cover(vertex_cover_instance(g, unit_weights(g))).value;
  }
  if (a == "match-2") return brute_force_matching(inst.graph()).value;
  if (a == "bmatch") {
    const auto b = capacities(inst.graph(), o);
    return brute_force_matching(inst.graph(), b).value;
  }
  return std::nullopt;
}

Rational approximation_factor(Goal goal, const Rational& objective, const Rational& optimum) {
  const Rational& num = goal == Goal::Maximize ? optimum : objective;
  const Rational& den = goal == Goal::Maximize ? objective : optimum;
  if (den.sign() == 0) return num.sign() == 0 ? Rational(1) : Rational(-1);
  return num / den;
}

nlohmann::json rational_json(const Rational& r) { return {{"exact", r.str()}, {"decimal", r.decimal(6)}}; }

nlohmann::json make_report(const AlgorithmInfo& alg, const Instance& inst, const RunOptions& opts, const Outcome& out,
                           const std::optional<Rational>& optimum) {
  nlohmann::json j;
  j["schema"] = 1;
  j["algorithm"] = alg.name;
  j["instance_digest"] = inst.digest;
  j["config"] = out.trace.config.to_json();
  if (opts.epsilon) j["epsilon"] = opts.epsilon->str();
  if (alg.name == "bmatch") j["b"] = opts.b;
  j["rounds"] = out.trace.final_attempt_rounds();
  j["rounds_all_attempts"] = out.trace.total_rounds;
  j["peak_memory"] = out.trace.peak_per_machine;
  j["budget_violated"] = out.trace.budget_violated;
  j["attempts"] = out.trace.attempts.size();
  j["objective"] = rational_json(out.objective);
  if (out.bound) j["bound"] = rational_json(*out.bound);
  if (optimum) {
    j["oracle"] = rational_json(*optimum);
    // objective/oracle for maximization, oracle/objective for minimization
    const Rational f = approximation_factor(alg.goal, out.objective, *optimum);
    j["ratio"] = f.sign() > 0 ? rational_json(Rational(1) / f) : rational_json(Rational(0));
    j["approximation_factor"] = rational_json(f);
  }
  j["solution"] = out.solution;
  if (!out.extra.empty()) j["details"] = out.extra;
  return j;
}

Outcome read_solution(const AlgorithmInfo& alg, const Instance& inst, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path.string());
  Outcome out;
  if (alg.goal == Goal::Colours) {
    const Graph& g = inst.graph();
    Colouring col;
    col.kind = alg.name == "colour-v" ? Colouring::Kind::Vertex : Colouring::Kind::Edge;
    col.assignment.assign(col.kind == Colouring::Kind::Vertex ? g.n() : g.m(), Colour{});
    std::vector<char> seen(col.assignment.size(), 0);
    std::uint64_t x = 0, grp = 0, c = 0;
    while (in >> x >> grp >> c) {
      if (x >= col.assignment.size()) throw InvalidInput("colour line for unknown id " + std::to_string(x));
      col.assignment[x] = {static_cast<std::uint32_t>(grp), static_cast<std::uint32_t>(c)};
      seen[x] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InvalidInput("colouring misses some ids");
    set_colouring(out, col);
    return out;
  }
  std::vector<std::uint32_t> ids;
  std::uint64_t x = 0;
  while (in >> x) ids.push_back(static_cast<std::uint32_t>(x));
  if (!in.eof()) throw InvalidInput("malformed solution file");
  std::sort(ids.begin(), ids.end());
  set_ids(out, ids);
  return out;
}

Verdict verify(const AlgorithmInfo& alg, const Instance& inst, const Outcome& out, const RunOptions& opts,
               bool against_oracle) {
  Verdict v;
  ValidationReport rep;
  const std::string& a = alg.name;
  const auto ids = out.solution.get<std::vector<nlohmann::json>>();
  auto plain = [&] {
    std::vector<std::uint32_t> xs;
    for (const auto& x : ids) xs.push_back(x.get<std::uint32_t>());
    return xs;
  };
  Rational objective = out.objective;
  if (a == "sc-f" || a == "sc-lnD") {
    rep = validate(Cover{plain()}, inst.set_cover());
  } else if (a == "vc-2") {
    const Graph& g = inst.graph();
    rep = validate(Cover{plain()}, vertex_cover_instance(g, unit_weights(g)));
  } else if (a == "match-2") {
    rep = validate(Matching{plain()}, inst.graph());
  } else if (a == "bmatch") {
    const auto b = capacities(inst.graph(), opts);
    rep = validate(Matching{plain()}, inst.graph(), b);
  } else if (a == "clique") {
    rep = validate_clique(plain(), inst.graph());
  } else if (alg.goal == Goal::Maximal) {
    rep = validate_mis(plain(), inst.graph());
  } else {
    Colouring col;
    col.kind = a == "colour-v" ? Colouring::Kind::Vertex : Colouring::Kind::Edge;
    for (const auto& t : ids) col.assignment.push_back({t[1].get<std::uint32_t>(), t[2].get<std::uint32_t>()});
    rep = validate(col, inst.graph());
  }
  v.valid = !rep.malformed && rep.feasible;
  if (!rep.malformed) objective = rep.objective;
  v.message = rep.message;
  v.lines.push_back(std::string(v.valid ? "valid" : "invalid") + (rep.message.empty() ? "" : ": " + rep.message));
  if (!v.valid) {
    v.lines.push_back("FAIL infeasible");
    return v;
  }
  v.lines.push_back("objective " + objective.str() + " (" + objective.decimal(6) + ")");
  v.pass = true;
  if (!against_oracle) return v;
  try {
    v.optimum = oracle_value(alg, inst, opts);
  } catch (const TooLarge& e) {
    v.lines.push_back(std::string("TooLarge: ") + e.what() + "; validity only");
    return v;
  }
  if (!v.optimum) {
    v.lines.push_back("no oracle for " + a + "; validity only");
    return v;
  }
  std::optional<Rational> bound = out.bound;
  if (!bound) {
    if (a == "sc-f") bound = count(std::max<std::size_t>(1, inst.set_cover().f()));
    if (a == "vc-2" || a == "match-2") bound = Rational(2);
    if (a == "bmatch") bound = bmatching_ratio_bound(opts.b, need_epsilon(opts, alg));
    if (a == "sc-lnD") {
      const Rational& eps = need_epsilon(opts, alg);
      bound = (Rational(1) + eps) * harmonic(std::max<std::size_t>(1, inst.set_cover().delta()));
      if (opts.preprocess) bound = *bound + eps;
    }
  }
  v.factor = approximation_factor(alg.goal, objective, *v.optimum);
  v.pass = v.factor->sign() >= 0 && *v.factor <= *bound;
  v.lines.push_back("OPT " + v.optimum->str() + " (" + v.optimum->decimal(6) + ")");
  v.lines.push_back(std::string(v.pass ? "PASS" : "FAIL") + " ratio " + v.factor->str() + " (" +
                    v.factor->decimal(6) + ") <= " + bound->str() + " (" + bound->decimal(6) + ")");
  return v;
}

}  // namespace lrmr::cli
