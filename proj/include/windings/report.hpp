#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace windings {

enum class Relation { at_most, at_least };

/// One verified claim. `statistic` is compared with `threshold`; `value` and
/// `reference` carry the raw estimate and its target for context.
struct CheckRecord {
  std::string id;
  std::string anchor;  // the limit theorem or identity being checked
  double alpha = 0.0;  // 2 for Brownian checks, 0 when not alpha specific
  double value = 0.0;
  double reference = 0.0;
  double statistic = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::at_most;
  bool gating = true;  // informational checks never fail a suite
  bool passed = false;
  std::size_t n = 0;
  std::string note;
  double runtime_seconds = 0.0;  // kept in memory only; reports stay reproducible

  bool operator==(const CheckRecord& o) const;
};

/// Evaluates relation(statistic, threshold) and fills `passed`.
CheckRecord make_check(std::string id, std::string anchor, double alpha, double value,
                       double reference, double statistic, Relation relation, double threshold,
                       std::size_t n, bool gating = true, std::string note = {});

struct ExperimentReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string config_json;  // effective config, canonical form
  std::vector<CheckRecord> checks;

  [[nodiscard]] bool passed() const;
  bool operator==(const ExperimentReport&) const = default;
};

std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);
/// Inverse of report_to_json; throws std::runtime_error on malformed input.
ExperimentReport report_from_json(const std::string& text);
/// Human-readable table.
std::string format_report(const ExperimentReport& report);

/// "<suite>_a<alpha-list>_s<seed>" (alphas joined by '-').
std::string report_stem(const std::string& suite, const std::vector<double>& alphas,
                        std::uint64_t seed);

}  // namespace windings
