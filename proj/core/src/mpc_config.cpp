#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "lrmr/mpc/config.hpp"

namespace lrmr::mpc {

TraceLevel trace_level_from_env() {
  const char* raw = std::getenv("MPC_TRACE");
  if (raw == nullptr) return TraceLevel::Summary;
  const std::string_view v(raw);
  if (v == "verbose") return TraceLevel::Verbose;
  if (v == "off") return TraceLevel::Off;
  return TraceLevel::Summary;
}

std::string to_string(TraceLevel level) {
  switch (level) {
    case TraceLevel::Off:
      return "off";
    case TraceLevel::Verbose:
      return "verbose";
    case TraceLevel::Summary:
      break;
  }
  return "summary";
}

namespace {

constexpr double kSnap = 1e-9;

double snapped_pow(double base, double exponent) {
  const double x = std::pow(base, exponent);
  const double r = std::round(x);
  if (std::fabs(x - r) <= kSnap * std::max(1.0, std::fabs(x))) return r;
  return x;
}

std::uint64_t to_count(double x) {
  if (!(x < 1.8e19)) throw InvalidInput("derived cluster parameter overflows");
  return static_cast<std::uint64_t>(x);
}

}  // namespace

std::uint64_t ceil_pow(double base, double exponent) { return to_count(std::ceil(snapped_pow(base, exponent))); }

std::uint64_t floor_pow(double base, double exponent) { return to_count(std::floor(snapped_pow(base, exponent))); }

void ClusterConfig::validate() const {
  if (machine_count < 1) throw InvalidInput("machine_count must be at least 1");
  if (fanout < 2) throw InvalidInput("fanout must be at least 2");
  if (memory_budget_words < 4) throw InvalidInput("memory budget too small");
  if (eta < 1) throw InvalidInput("eta must be at least 1");
  if (mu < 0.0) throw InvalidInput("mu must be non-negative");
}

nlohmann::json ClusterConfig::to_json() const {
  return {{"n", n},
          {"mu", mu},
          {"c", c},
          {"eta", eta},
          {"machine_count", machine_count},
          {"memory_budget_words", memory_budget_words},
          {"fanout", fanout},
          {"seed", seed},
          {"retry_cap", retry_cap},
          {"free_broadcast", free_broadcast},
          {"trace", to_string(trace)}};
}

ClusterConfig derive_config(const ConfigRequest& req) {
  if (req.mu < 0.0) throw InvalidInput("mu must be non-negative");
  ClusterConfig cfg;
  cfg.n = std::max<std::uint64_t>(1, req.n);
  cfg.mu = req.mu;
  const double n = static_cast<double>(cfg.n);
  if (req.c) {
    cfg.c = *req.c;
  } else if (cfg.n >= 2 && req.size >= 1) {
    cfg.c = std::log(static_cast<double>(req.size)) / std::log(n) - 1.0;
  }
  const std::uint64_t space = ceil_pow(n, 1.0 + cfg.mu);
  cfg.eta = req.eta.value_or(std::max<std::uint64_t>(1, space));
  cfg.machine_count = req.machine_count.value_or(
      static_cast<std::uint32_t>(std::max<std::uint64_t>(1, cfg.c > cfg.mu ? ceil_pow(n, cfg.c - cfg.mu) : 1)));
  cfg.fanout = req.fanout.value_or(static_cast<std::uint32_t>(std::max<std::uint64_t>(2, ceil_pow(n, cfg.mu))));
  if (req.memory_budget_words) {
    cfg.memory_budget_words = *req.memory_budget_words;
  } else {
    const double factor = std::max(1.0, req.space_factor);
    cfg.memory_budget_words = to_count(std::ceil(static_cast<double>(req.multiplier) * factor * static_cast<double>(space)));
  }
  cfg.seed = req.seed;
  cfg.retry_cap = req.retry_cap;
  cfg.free_broadcast = req.free_broadcast;
  cfg.parallel = req.parallel;
  cfg.trace = req.trace.value_or(trace_level_from_env());
  cfg.validate();
  return cfg;
}

}  // namespace lrmr::mpc
