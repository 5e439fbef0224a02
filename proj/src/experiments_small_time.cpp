#include <algorithm>
#include <cmath>

#include "experiments_common.hpp"
#include "windings/experiments.hpp"
#include "windings/format.hpp"
#include "windings/levy_angular.hpp"
#include "windings/parallel.hpp"
#include "windings/samplers.hpp"
#include "windings/stats.hpp"

namespace windings {
namespace {

const char* kAnchorClock = "Small-time clock: H(t)/t -> 1 almost surely";
const char* kAnchorWinding = "Small-time winding law: c^{-1/alpha} theta_c -> symmetric alpha-stable";
const char* kAnchorExit = "Small-time cone exit: (1/c) T^{|theta|}_{a c^{1/alpha}} -> T^{|zeta|}_a";
const char* kAnchorInner = "Windings over (t, 1] from the origin: Gaussian limit, variance r(alpha)";
const char* kAnchorRho = "Variance rate of the time-changed winding: E rho_1^2 = k(alpha)";

/// Planar stable value Z_1 for the process started at 0.
ComplexPoint planar_stable(double alpha, RandomStream& rng) {
  const double sd = std::sqrt(2.0 * sample_positive_stable(0.5 * alpha, rng));
  return {sd * rng.normal(), sd * rng.normal()};
}

struct ExitSample {
  double time = 0.0;
  bool censored = false;
};

/// First time |zeta| >= level for a symmetric stable Euler path with step
/// `dt`, interpolated linearly inside the crossing step.
ExitSample zeta_exit(double alpha, double level, double dt, double horizon, RandomStream& rng) {
  const double scale = std::pow(dt, 1.0 / alpha);
  double x = 0.0;
  double t = 0.0;
  while (t < horizon) {
    const double next = x + scale * sample_symmetric_stable(alpha, rng);
    const double t_next = t + dt;
    if (std::abs(next) >= level) {
      const double target = next > 0 ? level : -level;
      return {t + std::clamp((target - x) / (next - x), 0.0, 1.0) * dt, false};
    }
    x = next;
    t = t_next;
  }
  return {horizon, true};
}

}  // namespace

ExperimentReport run_small_time_suite(const ExperimentConfig& config) {
  config.validate();
  using detail::add_check;
  auto report = detail::start_report("small_time", config);
  const auto alphas = suite_alphas("small_time", config);
  const auto& st = config.small_time;
  const double c = st.scale;

  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double alpha = alphas[ai];
    const StableIndex index(alpha);
    const auto constants = compute_constants(alpha);

    {  // clock on [0, c]
      detail::Stopwatch clock;
      const std::size_t seeds = config.replicas > 0 ? config.replicas : st.clock_seeds;
      PathConfig pc = detail::base_path_config(config);
      pc.horizon = c;
      pc.base_step = c / 200.0;
      const RngSeed seed = detail::check_seed(config, detail::kSmallTime, ai, 0);
      const auto errors = parallel_map(seeds, config.workers, [&](std::size_t i) {
        auto rng = derive_substream(seed, i);
        const auto path = generate_path(index, pc, rng);
        const auto h = clock_series(path);
        double worst = 0.0;
        for (std::size_t k = 0; k < path.size(); ++k) worst = std::max(worst, std::abs(h[k] - path.times[k]) / c);
        return worst;
      });
      const auto good = std::count_if(errors.begin(), errors.end(), [](double e) { return e < 0.05; });
      const double frac = static_cast<double>(good) / static_cast<double>(seeds);
      add_check(report,
                make_check("clock_sup_error", kAnchorClock, alpha, *std::max_element(errors.begin(), errors.end()),
                           0.05, frac, Relation::at_least, 0.95, seeds, true,
                           "fraction of seeds with sup_{x<=1} |H(cx)/c - x| < 0.05; value is the worst seed"),
                clock);
    }

    {  // winding at time c against zeta_1
      detail::Stopwatch clock;
      const std::size_t n = detail::replicas_or(config, 5000);
      PathConfig pc = detail::base_path_config(config);
      pc.horizon = c;
      pc.base_step = c / 8.0;
      const RngSeed seed = detail::check_seed(config, detail::kSmallTime, ai, 1);
      const RngSeed ref_seed = detail::check_seed(config, detail::kSmallTime, ai, 2);
      const double scale = std::pow(c, -1.0 / alpha);
      auto theta = parallel_map(n, config.workers, [&](std::size_t i) {
        auto rng = derive_substream(seed, i);
        const auto path = generate_path(index, pc, rng);
        return scale * winding_series(path).back();
      });
      auto zeta = parallel_map(n, config.workers, [&](std::size_t i) {
        auto rng = derive_substream(ref_seed, i);
        return sample_symmetric_stable(alpha, rng);
      });
      const auto ks = stats::ks_two_sample(stats::Sample(std::move(theta)), stats::Sample(std::move(zeta)));
      add_check(report,
                make_check("winding_stable_ks", kAnchorWinding, alpha, ks.statistic, 0.0, ks.statistic,
                           Relation::at_most, 0.05, n, true,
                           "two-sample KS against exact symmetric stable draws; c = " + format_double(c)),
                clock);
    }

    {  // cone exit times
      detail::Stopwatch clock;
      const std::size_t n = detail::replicas_or(config, 3000);
      const double level = st.exit_level * std::pow(c, 1.0 / alpha);
      PathConfig pc = detail::base_path_config(config);
      pc.horizon = c * st.exit_horizon;
      pc.base_step = c * st.zeta_step;
      const RngSeed seed = detail::check_seed(config, detail::kSmallTime, ai, 3);
      const RngSeed ref_seed = detail::check_seed(config, detail::kSmallTime, ai, 4);
      const auto theta_exit = parallel_map(n, config.workers, [&](std::size_t i) {
        auto rng = derive_substream(seed, i);
        double hit = -1.0;
        const auto end = run_path(index, pc, rng, [&](const StepState& s) {
          if (std::abs(s.theta) < level) return false;
          hit = detail::crossing_time(s, level);
          return true;
        });
        if (hit < 0.0 || end.exhausted) return ExitSample{st.exit_horizon, true};
        return ExitSample{hit / c, false};
      });
      const auto zeta_exit_times = parallel_map(n, config.workers, [&](std::size_t i) {
        auto rng = derive_substream(ref_seed, i);
        return zeta_exit(alpha, st.exit_level, st.zeta_step, st.exit_horizon, rng);
      });
      std::vector<double> a, b;
      std::size_t censored = 0;
      for (const auto& e : theta_exit) {
        a.push_back(e.time);
        censored += e.censored ? 1 : 0;
      }
      for (const auto& e : zeta_exit_times) {
        b.push_back(e.time);
        censored += e.censored ? 1 : 0;
      }
      const double mean_ref = 1.0 / std::tgamma(1.0 + alpha);
      const auto ks = stats::ks_two_sample(stats::Sample(a), stats::Sample(b));
      add_check(report,
                make_check("exit_time_ks", kAnchorExit, alpha, stats::mean(a), stats::mean(b), ks.statistic,
                           Relation::at_most, 0.08, n, true,
                           "value/reference: mean scaled exit time of theta / of the Euler stable path (exact "
                           "mean for a = 1: " + format_double(mean_ref) + "); censored: " + std::to_string(censored)),
                clock);
    }

    {  // windings over (t, 1] started from 0
      detail::Stopwatch clock;
      const std::size_t n = detail::replicas_or(config, 2000);
      const double log_inv = st.log_inverse_start;
      const double t0 = std::exp(-log_inv);
      PathConfig pc = detail::base_path_config(config);
      pc.horizon = 1.0 - t0;
      pc.base_step = 1.0;
      const RngSeed seed = detail::check_seed(config, detail::kSmallTime, ai, 5);
      const auto values = parallel_map(n, config.workers, [&](std::size_t i) {
        auto rng = derive_substream(seed, i);
        PathConfig local = pc;
        local.start = std::pow(t0, 1.0 / alpha) * planar_stable(alpha, rng);
        const auto end = run_path(index, local, rng, {});
        return end.exhausted ? std::nan("") : end.state.theta / std::sqrt(log_inv);
      });
      std::vector<double> v;
      for (double x : values) {
        if (!std::isnan(x)) v.push_back(x);
      }
      const double var = stats::variance(v);
      const double mean = stats::mean(v);
      add_check(report,
                make_check("inner_winding_mean", kAnchorInner, alpha, mean, 0.0,
                           std::abs(mean) / stats::standard_error(v), Relation::at_most, 3.0, v.size(), true,
                           "statistic is |mean| in standard errors"),
                clock);
      add_check(report,
                make_check("inner_winding_variance", kAnchorInner, alpha, var, constants.r,
                           std::abs(var / constants.r - 1.0), Relation::at_most, 0.25, v.size(), true,
                           "relative deviation from r(alpha) at t = e^-" + format_double(log_inv) +
                               "; dropped (budget): " + std::to_string(n - v.size())),
                clock);
    }

    {  // variance of rho_1, three ways
      detail::Stopwatch clock;
      const std::size_t n = detail::replicas_or(config, 10000);
      const AngularLevyModel model(alpha, config.rho_epsilon);
      const RngSeed seed = detail::check_seed(config, detail::kSmallTime, ai, 6);
      const RngSeed path_seed = detail::check_seed(config, detail::kSmallTime, ai, 7);
      const auto direct = parallel_map(n, config.workers, [&](std::size_t i) {
        auto rng = derive_substream(seed, i);
        return model.increment(1.0, config.rho_epsilon, rng);
      });
      PathConfig pc = detail::base_path_config(config);
      pc.horizon = 1e12;
      pc.base_step = 1e-2;
      const auto from_paths = parallel_map(n, config.workers, [&](std::size_t i) {
        auto rng = derive_substream(path_seed, i);
        double rho = std::nan("");
        run_path(index, pc, rng, [&](const StepState& s) {
          if (s.clock < 1.0) return false;
          const double w = (1.0 - (s.clock - s.clock_increment)) / s.clock_increment;
          rho = s.theta - s.winding_increment + w * s.winding_increment;
          return true;
        });
        return rho;
      });
      std::vector<double> fp;
      for (double x : from_paths) {
        if (!std::isnan(x)) fp.push_back(x);
      }
      const double v_direct = stats::variance(direct);
      const double v_paths = stats::variance(fp);
      const double k = constants.k;
      const double spread = std::max({std::abs(v_direct / k - 1.0), std::abs(v_paths / k - 1.0),
                                      std::abs(v_direct / v_paths - 1.0)});
      add_check(report,
                make_check("rho_variance_direct", kAnchorRho, alpha, v_direct, k, std::abs(v_direct / k - 1.0),
                           Relation::at_most, 0.05, n, true,
                           "compound Poisson plus Gaussian small jumps, cutoff " + format_double(config.rho_epsilon)),
                clock);
      add_check(report,
                make_check("rho_variance_paths", kAnchorRho, alpha, v_paths, k, std::abs(v_paths / k - 1.0),
                           Relation::at_most, 0.05, fp.size(), true, "theta at the inverse clock A(1) on stable paths; paths that exhausted the point budget before H = 1: " +
                               std::to_string(n - fp.size())),
                clock);
      add_check(report,
                make_check("rho_variance_three_ways", kAnchorRho, alpha, spread, 0.0, spread, Relation::at_most, 0.07,
                           n, true, "largest pairwise relative gap among simulation, paths and quadrature"),
                clock);
    }
  }
  return report;
}

}  // namespace windings
