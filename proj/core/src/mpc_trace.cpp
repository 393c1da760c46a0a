#include <algorithm>

#include "lrmr/mpc/trace.hpp"

namespace lrmr::mpc {

void RunTrace::begin_attempt(std::uint64_t seed) {
  AttemptRecord a;
  a.seed = seed;
  a.outcome = "running";
  attempts.push_back(std::move(a));
}

void RunTrace::end_attempt(std::string outcome, std::string reason) {
  if (attempts.empty()) begin_attempt(config.seed);
  attempts.back().outcome = std::move(outcome);
  attempts.back().reason = std::move(reason);
}

std::uint32_t RunTrace::attempt_index() const {
  return attempts.empty() ? 0 : static_cast<std::uint32_t>(attempts.size() - 1);
}

void RunTrace::record(RoundRecord rec, const std::vector<std::uint64_t>& peaks) {
  if (attempts.empty()) begin_attempt(config.seed);
  ++attempts.back().rounds;
  rec.index = total_rounds++;
  rec.attempt = attempt_index();
  if (peak_per_machine.size() < peaks.size()) peak_per_machine.resize(peaks.size(), 0);
  for (std::size_t i = 0; i < peaks.size(); ++i) peak_per_machine[i] = std::max(peak_per_machine[i], peaks[i]);
  peak_memory = std::max(peak_memory, rec.max_peak);
  if (rec.max_peak > config.memory_budget_words) budget_violated = true;
  switch (config.trace) {
    case TraceLevel::Off:
      return;
    case TraceLevel::Summary:
      rec.received.clear();
      rec.sent.clear();
      rec.peak.clear();
      break;
    case TraceLevel::Verbose:
      rec.peak = peaks;
      break;
  }
  rounds.push_back(std::move(rec));
}

std::uint64_t RunTrace::final_attempt_rounds() const { return attempts.empty() ? 0 : attempts.back().rounds; }

nlohmann::json RunTrace::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["config"] = config.to_json();
  nlohmann::json rs = nlohmann::json::array();
  for (const RoundRecord& r : rounds) {
    nlohmann::json x{{"index", r.index},
                     {"attempt", r.attempt},
                     {"label", r.label},
                     {"messages", r.messages},
                     {"words", r.words},
                     {"max_received", r.max_received},
                     {"max_sent", r.max_sent},
                     {"max_peak", r.max_peak}};
    if (!r.peak.empty()) {
      x["received"] = r.received;
      x["sent"] = r.sent;
      x["peak"] = r.peak;
    }
    if (r.failure) {
      x["failure"] = true;
      x["reason"] = r.reason;
    }
    rs.push_back(std::move(x));
  }
  j["rounds"] = std::move(rs);
  nlohmann::json as = nlohmann::json::array();
  for (const AttemptRecord& a : attempts) {
    as.push_back({{"seed", a.seed}, {"rounds", a.rounds}, {"outcome", a.outcome}, {"reason", a.reason}});
  }
  j["attempts"] = std::move(as);
  j["total_rounds"] = total_rounds;
  j["peak_memory"] = peak_memory;
  j["peak_per_machine"] = peak_per_machine;
  j["budget_violated"] = budget_violated;
  j["metrics"] = metrics;
  return j;
}

}  // namespace lrmr::mpc
