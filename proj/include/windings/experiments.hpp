#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "windings/config.hpp"
#include "windings/report.hpp"

namespace windings {

/// Boundary f(t) = t^{1/alpha} (log(1/t))^{beta/alpha} for t in (0, 1/e),
/// continued as f(1/e) (e t)^{1/alpha} above so it stays nondecreasing.
/// A tabulated family instead carries (s, g(s)) samples of the integrand
/// variable on [1, inf) and is decided numerically.
class BoundaryFamily {
 public:
  static BoundaryFamily bertrand(double alpha, double beta);
  /// `points` sorted by s, s >= 1, g positive and nondecreasing (else
  /// std::domain_error).
  static BoundaryFamily tabulated(double alpha, std::vector<std::pair<double, double>> points);

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] bool is_tabulated() const { return !table_.empty(); }
  [[nodiscard]] const std::vector<std::pair<double, double>>& table() const { return table_; }

  /// Small-time boundary f(t), t > 0.
  [[nodiscard]] double operator()(double t) const;
  /// Large-argument form used by the integral test: s^{1/alpha} (log s)^{beta/alpha}, s >= e.
  [[nodiscard]] double at_infinity(double s) const;

 private:
  std::string id_;
  double alpha_ = 1.0;
  double beta_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

struct IntegralVerdict {
  bool converges = false;
  std::string method;       // "bertrand" or "numeric"
  double log_exponent = 0;  // fitted or exact exponent of log s in s * f(s)^{-alpha}
};

/// Convergence of int^inf f(s)^{-alpha} ds.
IntegralVerdict integral_test(double alpha, const BoundaryFamily& family);

ExperimentReport run_large_time_suite(const ExperimentConfig& config);
ExperimentReport run_small_time_suite(const ExperimentConfig& config);
ExperimentReport run_lil_suite(const ExperimentConfig& config);
ExperimentReport run_bm_suite(const ExperimentConfig& config);

/// large_time | small_time | lil | bm.
const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for unknown names.
ExperimentReport run_suite(std::string_view name, const ExperimentConfig& config);
/// Alphas a suite runs with under this config (config list or suite default).
std::vector<double> suite_alphas(std::string_view name, const ExperimentConfig& config);

}  // namespace windings
