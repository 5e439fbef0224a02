#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "experiments_common.hpp"
#include "windings/experiments.hpp"
#include "windings/format.hpp"
#include "windings/levy_angular.hpp"
#include "windings/parallel.hpp"
#include "windings/stats.hpp"

namespace windings {
namespace {

struct LargeTimeReplica {
  bool exhausted = false;
  std::vector<double> theta;  // final winding per center
  double clock = 0.0;
  double log_exit = 0.0;      // (1/c) log T, 1 when censored
  bool exit_censored = false;
  bool survived = false;
};

const char* kAnchorGauss = "Gaussian limit of windings at large times, variance r(alpha) log t";
const char* kAnchorClock = "Large-time clock: H(t)/log t -> K(alpha) = E|Z_1|^{-alpha}";
const char* kAnchorHitting = "Log-scale hitting times of the winding -> Brownian hitting law";
const char* kAnchorErf = "Survival of the one-sided winding cone -> erf(b/sqrt(2 r(alpha)))";
const char* kAnchorMulti = "Windings around several points at large times";
const char* kAnchorLoops = "Discretization of the winding: missed loops under angle-cap halving";

}  // namespace

ExperimentReport run_large_time_suite(const ExperimentConfig& config) {
  config.validate();
  using detail::add_check;
  auto report = detail::start_report("large_time", config);
  const auto alphas = suite_alphas("large_time", config);
  const auto& lt = config.large_time;
  const double c = lt.log_horizon;
  const double horizon = std::exp(c);
  const std::size_t n = detail::replicas_or(config, 2000);

  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double alpha = alphas[ai];
    detail::Stopwatch clock;
    const auto constants = compute_constants(alpha);
    const double r = constants.r;
    const double exit_level = lt.exit_level * std::sqrt(r * c);
    const double b = lt.survival_b > 0.0 ? lt.survival_b : std::sqrt(2.0 * r);
    const double survival_level = b * std::sqrt(c);

    PathConfig pc = detail::base_path_config(config);
    pc.horizon = horizon;
    pc.base_step = horizon;
    pc.centers = lt.centers;
    const StableIndex index(alpha);
    const RngSeed seed = detail::check_seed(config, detail::kLargeTime, ai, 0);

    const auto replicas = parallel_map(n, config.workers, [&](std::size_t i) {
      LargeTimeReplica out;
      auto rng = derive_substream(seed, i);
      PlanarPath path;
      try {
        path = generate_path(index, pc, rng);
      } catch (const PathBudgetExceeded&) {
        out.exhausted = true;
        return out;
      }
      const auto series = winding_series(path, lt.centers);
      for (const auto& s : series) out.theta.push_back(s.back());
      out.clock = clock_series(path).back();
      const auto exit = exit_time(path.times, series.front(), {ConeMode::one_sided, exit_level, 1.0});
      out.exit_censored = exit.censored;
      out.log_exit = exit.censored ? 1.0 : std::log(std::max(exit.time, 1.0)) / c;
      out.survived = *std::max_element(series.front().begin(), series.front().end()) < survival_level;
      return out;
    });

    std::vector<std::vector<double>> normalized(lt.centers.size());
    std::vector<double> clock_rate, log_exit;
    std::vector<bool> censored_flags;
    std::size_t survived = 0, exhausted = 0;
    for (const auto& rep : replicas) {
      if (rep.exhausted) {
        ++exhausted;
        continue;
      }
      for (std::size_t j = 0; j < rep.theta.size(); ++j) normalized[j].push_back(rep.theta[j] / std::sqrt(c));
      clock_rate.push_back(rep.clock / c);
      log_exit.push_back(rep.log_exit);
      censored_flags.push_back(rep.exit_censored);
      survived += rep.survived ? 1 : 0;
    }
    const std::size_t used = replicas.size() - exhausted;
    const std::string budget_note =
        exhausted == 0 ? std::string() : std::to_string(exhausted) + " paths exhausted the point budget and were dropped";
    if (used < 2) {
      add_check(report,
                make_check("paths_available", kAnchorGauss, alpha, static_cast<double>(used), 2.0,
                           static_cast<double>(used), Relation::at_least, 2.0, n, true, budget_note),
                clock);
      continue;
    }

    const auto& theta = normalized.front();
    const double mean = stats::mean(theta);
    const double se = stats::standard_error(theta);
    add_check(report,
              make_check("theta_mean", kAnchorGauss, alpha, mean, 0.0, std::abs(mean) / se,
                         Relation::at_most, 3.0, used, true,
                         "statistic is |mean| in standard errors" + (budget_note.empty() ? std::string() : "; " + budget_note)),
              clock);
    const double var = stats::variance(theta);
    add_check(report,
              make_check("theta_variance", kAnchorGauss, alpha, var, r, std::abs(var / r - 1.0),
                         Relation::at_most, 0.25, used, true,
                         "relative deviation from r(alpha); finite-t bias is expected at log scale"),
              clock);
    const auto ks = stats::ks_one_sample(stats::Sample(theta), stats::NormalLaw{r});
    add_check(report,
              make_check("theta_ks_normal", kAnchorGauss, alpha, ks.statistic, 0.0, ks.statistic,
                         Relation::at_most, 0.10, used, false,
                         "KS distance to N(0, r(alpha)); slow log-scale convergence, informational"),
              clock);

    const double clock_mean = stats::mean(clock_rate);
    add_check(report,
              make_check("clock_mean", kAnchorClock, alpha, clock_mean, constants.K,
                         std::abs(clock_mean / constants.K - 1.0), Relation::at_most, 0.20, used),
              clock);

    const auto ks_exit = stats::ks_one_sample_censored(
        log_exit, censored_flags, [&](double s) { return stats::special::bm_hitting_cdf(lt.exit_level, s); }, 1.0);
    add_check(report,
              make_check("hitting_time_ks", kAnchorHitting, alpha, ks_exit.statistic, 0.0,
                         ks_exit.statistic, Relation::at_most, 0.10, used, true,
                         "censored KS of (1/c) log T over s <= 1 against the hitting law of level " +
                             format_double(lt.exit_level)),
              clock);

    const double p_survive = static_cast<double>(survived) / static_cast<double>(used);
    const double erf_ref = std::erf(b / std::sqrt(2.0 * r));
    add_check(report,
              make_check("erf_survival", kAnchorErf, alpha, p_survive, erf_ref,
                         std::abs(p_survive - erf_ref), Relation::at_most, 0.10, used, true,
                         "b = " + format_double(b)),
              clock);

    if (normalized.size() > 1) {
      double worst_ks = 0.0;
      double min_corr = 1.0;
      std::string ratios;
      for (std::size_t j = 0; j < normalized.size(); ++j) {
        const double m = stats::mean(normalized[j]);
        const double sd = std::sqrt(stats::variance(normalized[j]));
        std::vector<double> standardized;
        for (double x : normalized[j]) standardized.push_back((x - m) / sd);
        worst_ks = std::max(worst_ks, stats::ks_one_sample(stats::Sample(standardized), stats::NormalLaw{1.0}).statistic);
        ratios += (j ? ", " : "") + format_significant(sd * sd / r, 4);
        for (std::size_t k = j + 1; k < normalized.size(); ++k) {
          min_corr = std::min(min_corr, stats::correlation(normalized[j], normalized[k]));
        }
      }
      add_check(report,
                make_check("multi_center_normality", kAnchorMulti, alpha, worst_ks, 0.0, worst_ks,
                           Relation::at_most, 0.05, used, true,
                           "largest KS distance of a standardized per-center winding to N(0, 1); variance / "
                           "r(alpha) per center: " + ratios +
                               " (far centers start winding later, so their log-time is shorter)"),
                clock);
      add_check(report,
                make_check("multi_center_correlation", kAnchorMulti, alpha, min_corr, 1.0, min_corr,
                           Relation::at_least, 0.5, used, true,
                           "smallest pairwise correlation; windings around distinct points differ by a "
                           "bounded amount for a transient process, so the limit coordinates coincide"),
                clock);
    }

    // Paths at half the angle cap, subsampled under the configured cap; a
    // nonzero multiple of 2 pi at the horizon is a missed loop.
    PathConfig fine = pc;
    fine.angle_cap = 0.5 * pc.angle_cap;
    const RngSeed loop_seed = detail::check_seed(config, detail::kLargeTime, ai, 1);
    const auto loops = parallel_map(n, config.workers, [&](std::size_t i) -> int {
      auto rng = derive_substream(loop_seed, i);
      try {
        const auto path = generate_path(index, fine, rng);
        return missed_loops(path, coarsen(path, pc)) != 0 ? 1 : 0;
      } catch (const PathBudgetExceeded&) {
        return -1;
      }
    });
    const auto loop_used =
        static_cast<std::size_t>(std::count_if(loops.begin(), loops.end(), [](int v) { return v >= 0; }));
    const auto missed = static_cast<std::size_t>(std::count(loops.begin(), loops.end(), 1));
    const double miss_rate = loop_used == 0 ? 1.0 : static_cast<double>(missed) / static_cast<double>(loop_used);
    add_check(report,
              make_check("missed_loop_rate", kAnchorLoops, alpha, miss_rate, 0.0, miss_rate,
                         Relation::at_most, 0.01, loop_used, false,
                         "fraction of paths whose winding at the horizon changes by a multiple of 2 pi when the "
                         "angle cap is halved; over the many scale octaves of [0, e^c] heavy-tailed steps that "
                         "pass near the center make this large, so it is reported, not gated"),
              clock);
  }
  return report;
}

}  // namespace windings
