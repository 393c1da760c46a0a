#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lrmr/errors.hpp"

namespace lrmr::mpc {

enum class TraceLevel { Off, Summary, Verbose };

/// Reads MPC_TRACE (verbose|summary|off); summary when unset.
TraceLevel trace_level_from_env();
std::string to_string(TraceLevel level);

/// Smallest integer >= base^exponent, tolerant of pow() rounding right at integers.
std::uint64_t ceil_pow(double base, double exponent);
/// Largest integer <= base^exponent, same tolerance.
std::uint64_t floor_pow(double base, double exponent);

/// Default multiplier K in the per-machine budget K * factor * n^{1+mu}.
inline constexpr std::uint32_t kDefaultMemoryMultiplier = 48;

struct ClusterConfig {
  /// Problem scale n (the ground-set size m for the bucketed set cover).
  std::uint64_t n = 1;
  double mu = 0.2;
  double c = 0.0;
  std::uint64_t eta = 1;
  std::uint32_t machine_count = 1;
  std::uint64_t memory_budget_words = 1;
  std::uint32_t fanout = 2;
  std::uint64_t seed = 1;
  /// Extra attempts after a declared failure.
  std::uint32_t retry_cap = 3;
  bool free_broadcast = false;
  /// Run machine steps on worker threads.
  bool parallel = false;
  TraceLevel trace = TraceLevel::Summary;

  /// Throws InvalidInput on an inconsistent configuration.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Derivation inputs. `size` is the quantity the density exponent refers
/// to: |E| for graphs, m for the f-approximate set cover, sum |S_i| for the
/// bucketed set cover.
struct ConfigRequest {
  std::uint64_t n = 1;
  std::uint64_t size = 1;
  double mu = 0.2;
  std::optional<double> c;
  std::optional<std::uint64_t> eta;
  std::optional<std::uint32_t> machine_count;
  std::optional<std::uint64_t> memory_budget_words;
  std::optional<std::uint32_t> fanout;
  /// Algorithm-specific space factor (f, b ln(1/delta), ln n, ...).
  double space_factor = 1.0;
  std::uint32_t multiplier = kDefaultMemoryMultiplier;
  std::uint64_t seed = 1;
  std::uint32_t retry_cap = 3;
  bool free_broadcast = false;
  bool parallel = false;
  std::optional<TraceLevel> trace;
};

ClusterConfig derive_config(const ConfigRequest& req);

}  // namespace lrmr::mpc
