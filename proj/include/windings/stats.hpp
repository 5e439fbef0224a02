#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "windings/rng.hpp"

namespace windings::stats {

/// Non-empty sequence of finite reals.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

struct KsResult {
  double statistic = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;  // 0 for one-sample tests
  double critical_ref = 0.0;  // asymptotic 1% critical value
};

// Reference laws -------------------------------------------------------------

struct NormalLaw {
  double variance = 1.0;
};
struct CauchyLaw {};
/// Symmetric stable law with characteristic function exp(-|scale u|^alpha).
/// Sampler only; comparisons go through a two-sample test.
struct SymmetricStableLaw {
  double alpha = 1.0;
  double scale = 1.0;
};
/// First hitting time of `level` by a standard Brownian motion:
/// P(T <= t) = 2 (1 - Phi(level / sqrt(t))).
struct BmHittingLaw {
  double level = 1.0;
};
struct EmpiricalLaw {
  std::vector<double> sorted;
  explicit EmpiricalLaw(std::vector<double> values);
};

using ReferenceLaw =
    std::variant<NormalLaw, CauchyLaw, SymmetricStableLaw, BmHittingLaw, EmpiricalLaw>;

bool has_cdf(const ReferenceLaw& law);
bool has_sampler(const ReferenceLaw& law);
/// Throws std::domain_error when the law has no CDF.
double cdf(const ReferenceLaw& law, double x);
/// Throws std::domain_error when the law has no sampler.
double draw(const ReferenceLaw& law, RandomStream& rng);

// Kolmogorov-Smirnov ---------------------------------------------------------

KsResult ks_one_sample(const Sample& sample, const ReferenceLaw& law);
KsResult ks_one_sample(std::span<const double> values, const std::function<double(double)>& cdf);
KsResult ks_two_sample(const Sample& a, const Sample& b);

/// One-sample sup-distance restricted to (-inf, cutoff]. Values flagged as
/// censored are only known to exceed the cutoff.
KsResult ks_one_sample_censored(std::span<const double> values, const std::vector<bool>& censored,
                                const std::function<double(double)>& cdf, double cutoff);

double ks_critical_one_sample(std::size_t n);
double ks_critical_two_sample(std::size_t n, std::size_t m);

// Special functions ----------------------------------------------------------

namespace special {
double gamma(double x);
double erf(double x);
double normal_cdf(double x);
double cauchy_cdf(double x);
double bm_hitting_cdf(double level, double t);
}  // namespace special

/// Name-dispatched access: gamma, erf, normal_cdf, cauchy_cdf (one argument)
/// and bm_hitting_cdf (level, t).
double special_function(std::string_view name, std::span<const double> args);

// Moments --------------------------------------------------------------------

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct MomentEstimate {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  Interval mean_ci;       // 95% percentile bootstrap
  Interval variance_ci;
};

MomentEstimate moment_estimate(const Sample& sample, int bootstrap_reps, RandomStream& rng);

double mean(std::span<const double> v);
double variance(std::span<const double> v);  // unbiased
double standard_error(std::span<const double> v);
double correlation(std::span<const double> a, std::span<const double> b);
/// Linear-interpolated quantile of the sample, q in [0, 1].
double quantile(std::span<const double> v, double q);

}  // namespace windings::stats
