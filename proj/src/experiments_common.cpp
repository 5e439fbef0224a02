#include "experiments_common.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "windings/experiments.hpp"

namespace windings {
namespace detail {

ExperimentReport start_report(const std::string& suite, const ExperimentConfig& config) {
  ExperimentConfig canonical = config;
  canonical.workers = 0;
  canonical.output_dir.clear();
  ExperimentReport r;
  r.suite = suite;
  r.seed = config.seed;
  r.config_hash = config_hash(config);
  r.config_json = emit_config(canonical);
  return r;
}

PathConfig base_path_config(const ExperimentConfig& config) {
  PathConfig pc;
  pc.angle_cap = config.angle_cap;
  pc.min_step = config.min_step;
  pc.max_points = config.max_points;
  return pc;
}

double crossing_time(const StepState& s, double level) {
  const double before = s.theta - s.winding_increment;
  const double target = s.theta >= 0.0 ? level : -level;
  const double w = std::clamp((target - before) / s.winding_increment, 0.0, 1.0);
  return s.t - s.dt + w * s.dt;
}

}  // namespace detail

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"large_time", "small_time", "lil", "bm"};
  return names;
}

std::vector<double> suite_alphas(std::string_view name, const ExperimentConfig& config) {
  if (name == "bm") return {2.0};
  if (!config.alphas.empty()) return config.alphas;
  if (name == "large_time") return {0.5, 1.0, 1.5};
  if (name == "small_time") return {0.8, 1.0, 1.2};
  if (name == "lil") return {0.8, 1.2};
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

ExperimentReport run_suite(std::string_view name, const ExperimentConfig& config) {
  if (name == "large_time") return run_large_time_suite(config);
  if (name == "small_time") return run_small_time_suite(config);
  if (name == "lil") return run_lil_suite(config);
  if (name == "bm") return run_bm_suite(config);
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

}  // namespace windings
