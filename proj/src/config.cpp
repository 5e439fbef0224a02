#include "windings/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace windings {
namespace {

using nlohmann::json;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

json point_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

/// Reads keys out of one JSON object, complaining about leftovers.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    require(j.is_object(), where_ + " must be a JSON object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.push_back(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
  }

  void get_points(const char* key, std::vector<std::complex<double>>& out) {
    seen_.push_back(key);
    if (!j_.contains(key)) return;
    const auto& a = j_.at(key);
    require(a.is_array(), where_ + "." + key + " must be an array of [re, im] pairs");
    out.clear();
    for (const auto& p : a) {
      require(p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number(),
              where_ + "." + key + " entries must be [re, im]");
      out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  }

  const json& sub(const char* key) {
    seen_.push_back(key);
    static const json empty = json::object();
    return j_.contains(key) ? j_.at(key) : empty;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      bool known = false;
      for (const auto& s : seen_) known = known || s == k;
      require(known, "unknown key " + where_ + "." + k);
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::vector<std::string> seen_;
};

json to_json(const ExperimentConfig& c) {
  json centers = json::array();
  for (auto z : c.large_time.centers) centers.push_back(point_to_json(z));
  return json{
      {"alphas", c.alphas},
      {"replicas", c.replicas},
      {"seed", c.seed},
      {"workers", c.workers},
      {"output_dir", c.output_dir},
      {"rho_epsilon", c.rho_epsilon},
      {"angle_cap", c.angle_cap},
      {"min_step", c.min_step},
      {"max_points", c.max_points},
      {"large_time",
       {{"log_horizon", c.large_time.log_horizon},
        {"exit_level", c.large_time.exit_level},
        {"survival_b", c.large_time.survival_b},
        {"centers", centers}}},
      {"small_time",
       {{"scale", c.small_time.scale},
        {"exit_level", c.small_time.exit_level},
        {"exit_horizon", c.small_time.exit_horizon},
        {"zeta_step", c.small_time.zeta_step},
        {"log_inverse_start", c.small_time.log_inverse_start},
        {"clock_seeds", c.small_time.clock_seeds}}},
      {"lil",
       {{"betas", c.lil.betas},
        {"depth", c.lil.depth},
        {"diverge_depth", c.lil.diverge_depth},
        {"converge_depth", c.lil.converge_depth},
        {"target_jumps", c.lil.target_jumps}}},
      {"bm",
       {{"scale", c.bm.scale},
        {"log_horizon", c.bm.log_horizon},
        {"exit_scale", c.bm.exit_scale},
        {"exit_level", c.bm.exit_level},
        {"exit_horizon", c.bm.exit_horizon},
        {"euler_step", c.bm.euler_step},
        {"large_time_replicas", c.bm.large_time_replicas}}},
  };
}

ExperimentConfig from_json(const json& j) {
  ExperimentConfig c;
  ObjectReader top(j, "config");
  top.get("alphas", c.alphas);
  top.get("replicas", c.replicas);
  top.get("seed", c.seed);
  top.get("workers", c.workers);
  top.get("output_dir", c.output_dir);
  top.get("rho_epsilon", c.rho_epsilon);
  top.get("angle_cap", c.angle_cap);
  top.get("min_step", c.min_step);
  top.get("max_points", c.max_points);

  ObjectReader lt(top.sub("large_time"), "large_time");
  lt.get("log_horizon", c.large_time.log_horizon);
  lt.get("exit_level", c.large_time.exit_level);
  lt.get("survival_b", c.large_time.survival_b);
  lt.get_points("centers", c.large_time.centers);
  lt.finish();

  ObjectReader st(top.sub("small_time"), "small_time");
  st.get("scale", c.small_time.scale);
  st.get("exit_level", c.small_time.exit_level);
  st.get("exit_horizon", c.small_time.exit_horizon);
  st.get("zeta_step", c.small_time.zeta_step);
  st.get("log_inverse_start", c.small_time.log_inverse_start);
  st.get("clock_seeds", c.small_time.clock_seeds);
  st.finish();

  ObjectReader lil(top.sub("lil"), "lil");
  lil.get("betas", c.lil.betas);
  lil.get("depth", c.lil.depth);
  lil.get("diverge_depth", c.lil.diverge_depth);
  lil.get("converge_depth", c.lil.converge_depth);
  lil.get("target_jumps", c.lil.target_jumps);
  lil.finish();

  ObjectReader bm(top.sub("bm"), "bm");
  bm.get("scale", c.bm.scale);
  bm.get("log_horizon", c.bm.log_horizon);
  bm.get("exit_scale", c.bm.exit_scale);
  bm.get("exit_level", c.bm.exit_level);
  bm.get("exit_horizon", c.bm.exit_horizon);
  bm.get("euler_step", c.bm.euler_step);
  bm.get("large_time_replicas", c.bm.large_time_replicas);
  bm.finish();

  top.finish();
  c.validate();
  return c;
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

void ExperimentConfig::validate() const {
  for (double a : alphas) {
    require(a > 0.0 && a < 2.0, "alpha " + std::to_string(a) + " out of range: stable suites need 0 < alpha < 2");
  }
  require(positive(rho_epsilon) && rho_epsilon < std::numbers::pi, "rho_epsilon must lie in (0, pi)");
  require(angle_cap > 0.0 && angle_cap < std::numbers::pi, "angle_cap must lie in (0, pi)");
  require(positive(min_step), "min_step must be positive");
  require(max_points >= 2, "max_points must be at least 2");

  require(positive(large_time.log_horizon), "large_time.log_horizon must be positive");
  require(positive(large_time.exit_level), "large_time.exit_level must be positive");
  require(large_time.survival_b >= 0.0 && std::isfinite(large_time.survival_b),
          "large_time.survival_b must be >= 0");
  require(!large_time.centers.empty(), "large_time.centers must not be empty");
  for (auto z : large_time.centers) {
    require(z != std::complex<double>(1.0, 0.0), "large_time.centers may not contain the start point 1");
  }

  require(positive(small_time.scale) && small_time.scale < 1.0, "small_time.scale must lie in (0, 1)");
  require(positive(small_time.exit_level), "small_time.exit_level must be positive");
  require(positive(small_time.exit_horizon), "small_time.exit_horizon must be positive");
  require(positive(small_time.zeta_step) && small_time.zeta_step < small_time.exit_horizon,
          "small_time.zeta_step must lie in (0, exit_horizon)");
  require(positive(small_time.log_inverse_start), "small_time.log_inverse_start must be positive");
  require(small_time.clock_seeds >= 1, "small_time.clock_seeds must be >= 1");

  require(!lil.betas.empty(), "lil.betas must not be empty");
  for (double b : lil.betas) require(b >= 0.0 && std::isfinite(b), "lil.betas must be >= 0");
  require(lil.depth >= 2 && lil.depth <= 60, "lil.depth must lie in [2, 60]");
  require(lil.diverge_depth >= 1 && lil.diverge_depth < lil.depth, "lil.diverge_depth must lie in [1, depth)");
  require(lil.converge_depth >= 1 && lil.converge_depth < lil.depth, "lil.converge_depth must lie in [1, depth)");
  require(positive(lil.target_jumps), "lil.target_jumps must be positive");

  require(positive(bm.scale) && bm.scale < 1.0, "bm.scale must lie in (0, 1)");
  require(positive(bm.log_horizon), "bm.log_horizon must be positive");
  require(positive(bm.exit_scale) && bm.exit_scale < 1.0, "bm.exit_scale must lie in (0, 1)");
  require(positive(bm.exit_level), "bm.exit_level must be positive");
  require(positive(bm.exit_horizon), "bm.exit_horizon must be positive");
  require(positive(bm.euler_step) && bm.euler_step < bm.exit_horizon, "bm.euler_step must lie in (0, exit_horizon)");
  require(bm.large_time_replicas >= 1, "bm.large_time_replicas must be >= 1");
}

ExperimentConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string emit_config(const ExperimentConfig& config) { return to_json(config).dump(2) + "\n"; }

std::string config_hash(const ExperimentConfig& config) {
  // Execution details do not change results and stay out of the hash.
  ExperimentConfig canonical = config;
  canonical.workers = 0;
  canonical.output_dir.clear();
  const std::string text = to_json(canonical).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& config) {
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv("WINDINGS_OUT"); env != nullptr && *env != '\0') return env;
  return "reports";
}

}  // namespace windings
