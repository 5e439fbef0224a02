#include "windings/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "windings/samplers.hpp"

namespace windings::stats {
namespace {

constexpr double kKsCoefficient1pct = 1.6276;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

double ecdf(const std::vector<double>& sorted, double x) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

}  // namespace

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::domain_error("sample must be non-empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::domain_error("sample values must be finite");
  }
}

EmpiricalLaw::EmpiricalLaw(std::vector<double> values) : sorted(std::move(values)) {
  if (sorted.empty()) throw std::domain_error("empirical law needs at least one value");
  std::sort(sorted.begin(), sorted.end());
}

bool has_cdf(const ReferenceLaw& law) {
  return !std::holds_alternative<SymmetricStableLaw>(law);
}

bool has_sampler(const ReferenceLaw& law) {
  return !std::holds_alternative<BmHittingLaw>(law);
}

double cdf(const ReferenceLaw& law, double x) {
  return std::visit(
      Overloaded{
          [x](const NormalLaw& l) { return special::normal_cdf(x / std::sqrt(l.variance)); },
          [x](const CauchyLaw&) { return special::cauchy_cdf(x); },
          [](const SymmetricStableLaw&) -> double {
            throw std::domain_error("symmetric stable reference has no CDF; use a two-sample test");
          },
          [x](const BmHittingLaw& l) { return special::bm_hitting_cdf(l.level, x); },
          [x](const EmpiricalLaw& l) { return ecdf(l.sorted, x); },
      },
      law);
}

double draw(const ReferenceLaw& law, RandomStream& rng) {
  return std::visit(
      Overloaded{
          [&rng](const NormalLaw& l) { return std::sqrt(l.variance) * rng.normal(); },
          [&rng](const CauchyLaw&) { return sample_cauchy(rng); },
          [&rng](const SymmetricStableLaw& l) {
            return l.scale * sample_symmetric_stable(l.alpha, rng);
          },
          [](const BmHittingLaw&) -> double {
            throw std::domain_error("hitting-time reference has no sampler");
          },
          [&rng](const EmpiricalLaw& l) {
            const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(l.sorted.size()));
            return l.sorted[std::min(i, l.sorted.size() - 1)];
          },
      },
      law);
}

double ks_critical_one_sample(std::size_t n) {
  return kKsCoefficient1pct / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return kKsCoefficient1pct * std::sqrt((dn + dm) / (dn * dm));
}

KsResult ks_one_sample(std::span<const double> values, const std::function<double(double)>& F) {
  if (values.empty()) throw std::domain_error("KS test needs a non-empty sample");
  const auto x = sorted_copy(values);
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = F(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {std::clamp(d, 0.0, 1.0), x.size(), 0, ks_critical_one_sample(x.size())};
}

KsResult ks_one_sample(const Sample& sample, const ReferenceLaw& law) {
  if (!has_cdf(law)) throw std::domain_error("reference law has no CDF");
  return ks_one_sample(sample.values(), [&law](double x) { return cdf(law, x); });
}

KsResult ks_two_sample(const Sample& a, const Sample& b) {
  const auto xa = sorted_copy(a.values());
  const auto xb = sorted_copy(b.values());
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double v = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == v) ++i;
    while (j < xb.size() && xb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  // One side exhausted: the remaining gap is attained right there.
  d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  return {d, xa.size(), xb.size(), ks_critical_two_sample(xa.size(), xb.size())};
}

KsResult ks_one_sample_censored(std::span<const double> values, const std::vector<bool>& censored,
                                const std::function<double(double)>& F, double cutoff) {
  if (values.empty()) throw std::domain_error("KS test needs a non-empty sample");
  if (values.size() != censored.size()) throw std::invalid_argument("censoring flags mismatch");
  std::vector<double> seen;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!censored[i] && values[i] <= cutoff) seen.push_back(values[i]);
  }
  std::sort(seen.begin(), seen.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    const double f = F(seen[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  d = std::max(d, std::abs(static_cast<double>(seen.size()) / n - F(cutoff)));
  return {std::clamp(d, 0.0, 1.0), values.size(), 0, ks_critical_one_sample(values.size())};
}

namespace special {

double gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma needs x > 0");
  return std::tgamma(x);
}

double erf(double x) { return std::erf(x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double cauchy_cdf(double x) { return 0.5 + std::atan(x) / std::numbers::pi; }

double bm_hitting_cdf(double level, double t) {
  if (!(level > 0.0)) throw std::domain_error("hitting level must be positive");
  if (t <= 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  return std::erfc(level / std::sqrt(2.0 * t));
}

}  // namespace special

double special_function(std::string_view name, std::span<const double> args) {
  const auto need = [&](std::size_t k) {
    if (args.size() != k) {
      throw std::domain_error(std::string(name) + " expects " + std::to_string(k) + " argument(s)");
    }
  };
  if (name == "gamma") { need(1); return special::gamma(args[0]); }
  if (name == "erf") { need(1); return special::erf(args[0]); }
  if (name == "normal_cdf") { need(1); return special::normal_cdf(args[0]); }
  if (name == "cauchy_cdf") { need(1); return special::cauchy_cdf(args[0]); }
  if (name == "bm_hitting_cdf") { need(2); return special::bm_hitting_cdf(args[0], args[1]); }
  throw std::domain_error("unknown special function: " + std::string(name));
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::domain_error("mean of an empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  if (v.size() < 2) throw std::domain_error("variance needs at least two values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double standard_error(std::span<const double> v) {
  return std::sqrt(variance(v) / static_cast<double>(v.size()));
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::domain_error("correlation needs paired samples");
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

double quantile(std::span<const double> v, double q) {
  if (v.empty()) throw std::domain_error("quantile of an empty sample");
  auto x = sorted_copy(v);
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(x.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (pos - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

MomentEstimate moment_estimate(const Sample& sample, int bootstrap_reps, RandomStream& rng) {
  const auto v = sample.values();
  if (v.size() < 2) throw std::domain_error("moment estimate needs n >= 2");
  if (bootstrap_reps < 100) throw std::domain_error("bootstrap needs at least 100 replicates");
  MomentEstimate out;
  out.mean = mean(v);
  out.variance = variance(v);
  std::vector<double> means(static_cast<std::size_t>(bootstrap_reps));
  std::vector<double> vars(means.size());
  std::vector<double> resample(v.size());
  for (std::size_t b = 0; b < means.size(); ++b) {
    for (auto& r : resample) {
      const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(v.size()));
      r = v[std::min(i, v.size() - 1)];
    }
    means[b] = mean(resample);
    vars[b] = variance(resample);
  }
  out.mean_ci = {quantile(means, 0.025), quantile(means, 0.975)};
  out.variance_ci = {quantile(vars, 0.025), quantile(vars, 0.975)};
  return out;
}

}  // namespace windings::stats
