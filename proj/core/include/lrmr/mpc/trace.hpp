#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lrmr/errors.hpp"
#include "lrmr/mpc/config.hpp"

namespace lrmr::mpc {

/// A machine's footprint passed the budget. Aborts the whole run.
class MemoryExceeded : public Error {
 public:
  MemoryExceeded(std::uint32_t machine, std::uint64_t words, std::uint64_t budget)
      : Error("machine " + std::to_string(machine) + " used " + std::to_string(words) + " words, budget " +
              std::to_string(budget)),
        machine_(machine),
        words_(words) {}
  std::uint32_t machine() const noexcept { return machine_; }
  std::uint64_t words() const noexcept { return words_; }

 private:
  std::uint32_t machine_;
  std::uint64_t words_;
};

/// One machine's outgoing messages alone exceed the budget.
class OversizedMessage : public MemoryExceeded {
 public:
  using MemoryExceeded::MemoryExceeded;
};

/// The algorithm declared a (w.h.p. unlikely) failure; the driver may retry.
class AttemptFailed : public Error {
 public:
  using Error::Error;
};

class RetriesExhausted : public Error {
 public:
  using Error::Error;
};

struct RoundRecord {
  std::uint64_t index = 0;
  std::uint32_t attempt = 0;
  std::string label;
  std::uint64_t messages = 0;
  std::uint64_t words = 0;
  std::uint64_t max_received = 0;
  std::uint64_t max_sent = 0;
  std::uint64_t max_peak = 0;
  // Filled at verbose level only.
  std::vector<std::uint64_t> received;
  std::vector<std::uint64_t> sent;
  std::vector<std::uint64_t> peak;
  bool failure = false;
  std::string reason;
};

struct AttemptRecord {
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;
  /// "ok", "failed" or "memory".
  std::string outcome;
  std::string reason;
};

class RunTrace {
 public:
  ClusterConfig config;
  std::vector<RoundRecord> rounds;
  std::vector<AttemptRecord> attempts;
  std::uint64_t total_rounds = 0;
  /// Highest footprint seen per machine id over all attempts.
  std::vector<std::uint64_t> peak_per_machine;
  std::uint64_t peak_memory = 0;
  /// Set when some recorded footprint passed the budget.
  bool budget_violated = false;
  /// Algorithm instrumentation (iteration sizes, potentials, ...).
  nlohmann::json metrics = nlohmann::json::object();

  void begin_attempt(std::uint64_t seed);
  void end_attempt(std::string outcome, std::string reason);
  std::uint32_t attempt_index() const;
  /// Attaches the round to the current attempt and folds its peaks in.
  void record(RoundRecord record, const std::vector<std::uint64_t>& peaks);
  /// Successful attempt's round count (the last attempt).
  std::uint64_t final_attempt_rounds() const;

  nlohmann::json to_json() const;
};

}  // namespace lrmr::mpc
