#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "windings/config.hpp"
#include "windings/report.hpp"
#include "windings/rng.hpp"
#include "windings/stable_process.hpp"

namespace windings::detail {

enum SuiteTag : std::uint64_t { kLargeTime = 1, kSmallTime = 2, kLil = 3, kBm = 4 };

inline std::size_t replicas_or(const ExperimentConfig& config, std::size_t fallback) {
  return config.replicas > 0 ? config.replicas : fallback;
}

/// Seed for one (suite, alpha, check) cell; replicas then use
/// derive_substream(seed, i).
inline RngSeed check_seed(const ExperimentConfig& config, SuiteTag suite, std::size_t alpha_index,
                          std::uint64_t check) {
  return RngSeed{config.seed, 0}.child(suite).child(alpha_index).child(check);
}

ExperimentReport start_report(const std::string& suite, const ExperimentConfig& config);

PathConfig base_path_config(const ExperimentConfig& config);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Appends a check, stamping its runtime.
inline void add_check(ExperimentReport& report, CheckRecord check, const Stopwatch& clock) {
  check.runtime_seconds = clock.seconds();
  report.checks.push_back(std::move(check));
}

/// Linear-interpolated first time |theta| (or theta, if one_sided) reaches
/// `level` inside the step that ends at state s.
double crossing_time(const StepState& s, double level);

}  // namespace windings::detail
