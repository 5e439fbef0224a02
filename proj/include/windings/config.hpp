#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace windings {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LargeTimeSettings {
  double log_horizon = 12.0;  // t = e^c
  double exit_level = 1.0;    // x / sqrt(r): level of the limiting hitting law
  double survival_b = 0.0;    // 0 means sqrt(2 r(alpha))
  std::vector<std::complex<double>> centers{{0.0, 0.0}, {5.0, 0.0}, {0.0, 5.0}};
  bool operator==(const LargeTimeSettings&) const = default;
};

struct SmallTimeSettings {
  double scale = 1e-4;              // c
  double exit_level = 1.0;          // a
  double exit_horizon = 30.0;       // in units of c; later exits are censored
  double zeta_step = 1e-4;          // Euler step of the reference process, in units of c
  double log_inverse_start = 12.0;  // windings over (e^{-12}, 1]
  std::size_t clock_seeds = 100;
  bool operator==(const SmallTimeSettings&) const = default;
};

struct LilSettings {
  std::vector<double> betas{0.0, 3.0};
  int depth = 30;              // t_n = 2^{-n}, n = 1..depth
  int diverge_depth = 20;      // crossings expected beyond this n for divergent families
  int converge_depth = 15;     // no crossings expected beyond this n for convergent ones
  double target_jumps = 50.0;  // mean jump count per dyadic increment of rho
  bool operator==(const LilSettings&) const = default;
};

struct BmSettings {
  double scale = 1e-4;
  double log_horizon = 12.0;
  double exit_scale = 1e-2;
  double exit_level = 1.0;
  double exit_horizon = 30.0;
  double euler_step = 1e-4;
  std::size_t large_time_replicas = 2000;
  bool operator==(const BmSettings&) const = default;
};

struct ExperimentConfig {
  std::vector<double> alphas;  // empty: each suite uses its own default list
  std::size_t replicas = 0;    // 0: per-check defaults
  std::uint64_t seed = 0;
  unsigned workers = 0;        // 0: one per hardware thread
  std::string output_dir;      // empty: $WINDINGS_OUT or ./reports
  double rho_epsilon = 1e-3;
  double angle_cap = std::numbers::pi / 8.0;
  double min_step = 1e-300;
  std::size_t max_points = 5'000'000;
  LargeTimeSettings large_time;
  SmallTimeSettings small_time;
  LilSettings lil;
  BmSettings bm;

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses JSON text; unknown keys are rejected, missing keys take defaults.
ExperimentConfig parse_config_text(const std::string& json_text);
/// Reads and parses a config file.
ExperimentConfig parse_config(const std::filesystem::path& path);
/// Effective config (all fields) as pretty JSON; parse_config_text inverts it.
std::string emit_config(const ExperimentConfig& config);
/// FNV-1a of the compact effective config (workers and output_dir
/// excluded), as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Output directory: config value, else $WINDINGS_OUT, else "reports".
std::filesystem::path resolve_output_dir(const ExperimentConfig& config);

}  // namespace windings
