// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "windings/config.hpp"
#include "windings/experiments.hpp"
#include "windings/format.hpp"
#include "windings/levy_angular.hpp"
#include "windings/parallel.hpp"
#include "windings/report.hpp"
#include "windings/samplers.hpp"
#include "windings/stable_process.hpp"
#include "windings/stats.hpp"

using namespace windings;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

int failures = 0;

void criterion(int number, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failures += o.pass ? 0 : 1;
  std::printf("criterion %2d %s: %s (%s; %.1fs)\n", number, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g(double x) { return format_significant(x, 4); }

const CheckRecord& find(const ExperimentReport& r, const std::string& id, double alpha) {
  for (const auto& c : r.checks) {
    if (c.id == id && c.alpha == alpha) return c;
  }
  throw std::runtime_error("report " + r.suite + " has no check " + id + " at alpha " + g(alpha));
}

void require_check(Outcome& o, const ExperimentReport& r, const std::string& id, double alpha) {
  const auto& c = find(r, id, alpha);
  o.require(c.passed, id + "@" + g(alpha) + "=" + g(c.statistic) + (c.relation == Relation::at_most ? "<=" : ">=") +
                          g(c.threshold));
}

bool multiple_of_2pi(double x) {
  const double m = x / (2.0 * pi);
  return std::abs(m - std::round(m)) * 2.0 * pi <= 1e-9;
}

// Counts violations of the exact pathwise properties on one path.
int path_violations(const PlanarPath& path) {
  int bad = 0;
  const auto theta = winding_series(path);
  const auto h = clock_series(path);
  for (std::size_t k = 0; k < path.size(); ++k) {
    const double start = std::arg(path.points[0] - path.center);
    bad += multiple_of_2pi(theta[k] - std::arg(path.points[k] - path.center) + start) ? 0 : 1;
    if (k > 0) bad += h[k] > h[k - 1] ? 0 : 1;
    bad += std::abs(inverse_clock(path.times, h, h[k]) - path.times[k]) <= 1e-12 * std::max(1.0, path.times[k]) ? 0 : 1;
  }
  for (double w : path.winding_increments) bad += (w > -pi && w <= pi) ? 0 : 1;
  auto at = [](const ExitTimeRecord& r) { return r.censored ? HUGE_VAL : r.time; };
  for (auto [c, d] : {std::pair{0.5, 1.0}, std::pair{1.0, 3.0}, std::pair{0.2, 0.25}}) {
    const double sym = at(exit_time(path.times, theta, {ConeMode::symmetric, c, 0.0}));
    const double two = at(exit_time(path.times, theta, {ConeMode::two_sided, c, d}));
    const double one = at(exit_time(path.times, theta, {ConeMode::one_sided, c, 0.0}));
    bad += (sym <= two && two <= one) ? 0 : 1;
  }
  return bad;
}

}  // namespace

int main() {
  const double alphas[] = {0.5, 1.0, 1.5};

  criterion(1, "constants identity r = k K, K(1) = 1", [&] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (double a : alphas) {
      const auto c = compute_constants(a);
      const double dev = std::abs(c.r / (c.k * c.K) - 1.0);
      o.require(dev <= 1e-8, "alpha " + g(a) + " |r/kK-1|=" + g(dev));
    }
    const double k1 = std::abs(compute_constants(1.0).K - 1.0);
    o.require(k1 <= 1e-10, "|K(1)-1|=" + g(k1));
    const double t = seconds_since(t0);
    o.require(t < 60.0, "runtime " + g(t) + "s < 60s");
    return o;
  });

  criterion(2, "Var(rho_1) from simulate_rho within 5% of k", [&] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < 3; ++i) {
      const double a = alphas[i];
      const double k = compute_constants(a).k;
      const auto x = parallel_map(10000, 0, [&](std::size_t j) {
        auto rng = derive_substream(RngSeed{2, i}, j);
        return simulate_rho(a, 1.0, 1e-3, rng).back();
      });
      const double dev = stats::variance(x) / k - 1.0;
      o.require(std::abs(dev) <= 0.05, "alpha " + g(a) + " var/k-1=" + g(dev));
    }
    const double t = seconds_since(t0);
    o.require(t < 300.0, "runtime " + g(t) + "s < 300s");
    return o;
  });

  criterion(3, "second moment of the angular measure = k two ways", [&] {
    Outcome o;
    for (double a : alphas) {
      const double one_d = angular_second_moment(a);
      const double two_d = nu_prefactor(a) * polar_moment_integral(a);
      const double dev = std::abs(one_d / two_d - 1.0);
      o.require(dev <= 1e-4, "alpha " + g(a) + " rel diff " + g(dev));
    }
    return o;
  });

  criterion(4, "subordinator Laplace transform E exp(-S(1)) = 1/e", [&] {
    Outcome o;
    std::uint64_t id = 0;
    for (double rho : {0.25, 0.5, 0.75}) {
      RandomStream rng(RngSeed{4, id++});
      std::vector<double> v(100000);
      for (auto& x : v) x = std::exp(-sample_positive_stable(rho, rng));
      const double z = (stats::mean(v) - std::exp(-1.0)) / stats::standard_error(v);
      o.require(std::abs(z) <= 3.0, "rho " + g(rho) + " z=" + g(z));
    }
    return o;
  });

  // Small-time suite at default settings (alphas 0.8, 1, 1.2) serves criteria 5-7.
  ExperimentConfig small;
  const auto small_report = run_small_time_suite(small);

  criterion(5, "small-time clock sup error < 0.05 in >= 95% of 100 seeds, alpha 1", [&] {
    Outcome o;
    require_check(o, small_report, "clock_sup_error", 1.0);
    o.require(find(small_report, "clock_sup_error", 1.0).n == 100, "100 seeds");
    return o;
  });

  criterion(6, "small-time winding law KS < 0.05, alpha 0.8 and 1.2", [&] {
    Outcome o;
    for (double a : {0.8, 1.2}) require_check(o, small_report, "winding_stable_ks", a);
    return o;
  });

  criterion(7, "small-time cone exit times KS < 0.08", [&] {
    Outcome o;
    for (double a : {0.8, 1.0, 1.2}) require_check(o, small_report, "exit_time_ks", a);
    return o;
  });

  ExperimentConfig large;
  const auto large_report = run_large_time_suite(large);

  criterion(8, "large-time Gaussian law at t = e^12 (mean within 3 SE, variance within 25% of r)", [&] {
    Outcome o;
    for (double a : alphas) {
      require_check(o, large_report, "theta_mean", a);
      require_check(o, large_report, "theta_variance", a);
    }
    return o;
  });

  criterion(9, "erf survival law within 0.10 of erf(1)", [&] {
    Outcome o;
    for (double a : alphas) require_check(o, large_report, "erf_survival", a);
    return o;
  });

  ExperimentConfig bm;
  const auto bm_report = run_bm_suite(bm);

  criterion(10, "Brownian small time: KS to N(0,1) < 0.03, clock mean within 0.02 of 1", [&] {
    Outcome o;
    require_check(o, bm_report, "winding_normal_ks", 2.0);
    require_check(o, bm_report, "clock_small_time", 2.0);
    return o;
  });

  criterion(11, "pathwise invariants over 1000 random paths per index and synthetic paths", [&] {
    Outcome o;
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
      const auto bad = parallel_map(1000, 0, [a](std::size_t i) {
        auto rng = derive_substream(RngSeed{11, static_cast<std::uint64_t>(a * 10)}, i);
        return path_violations(generate_path(StableIndex(a), PathConfig{}, rng));
      });
      int total = 0;
      for (int b : bad) total += b;
      o.require(total == 0, "alpha " + g(a) + ": " + std::to_string(total) + " violations");
    }
    const auto square = PlanarPath::from_points({0, 1, 2, 3, 4}, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}}, 1.0);
    o.require(std::abs(winding_series(square).back() - 2.0 * pi) < 1e-12 && path_violations(square) == 0,
              "square loop 2 pi");
    const auto flip = PlanarPath::from_points({0, 1}, {{1, 0}, {-1, 0}}, 1.0);
    o.require(flip.winding_increments.front() == pi, "half turn = pi");
    std::vector<double> t;
    std::vector<ComplexPoint> z;
    for (int k = 0; k <= 3000; ++k) {
      t.push_back(k / 1000.0);
      z.push_back(std::polar(std::exp(k / 1000.0), 2.0 * k / 1000.0));
    }
    const auto spiral = PlanarPath::from_points(t, z, 1.0);
    const auto h = clock_series(spiral);
    o.require(path_violations(spiral) == 0 && std::abs(h.back() - (1.0 - std::exp(-3.0))) < 1e-4,
              "exponential spiral clock");
    return o;
  });

  ExperimentConfig lil;
  const auto lil_report = run_lil_suite(lil);

  criterion(12, "LIL: crossings profiles and integral-test verdicts", [&] {
    Outcome o;
    for (double a : suite_alphas("lil", lil)) {
      for (const char* beta : {"0", "3"}) {
        require_check(o, lil_report, std::string("rho_crossings_beta") + beta, a);
        require_check(o, lil_report, std::string("theta_crossings_beta") + beta, a);
        require_check(o, lil_report, std::string("integral_test_beta") + beta, a);
      }
    }
    for (double a : {0.5, 1.0, 1.5}) {
      for (double beta : {0.0, 0.5, 1.0, 1.01, 2.0, 3.0}) {
        const bool verdict = integral_test(a, BoundaryFamily::bertrand(a, beta)).converges;
        if (verdict != (beta > 1.0)) o.require(false, "bertrand verdict alpha " + g(a) + " beta " + g(beta));
      }
    }
    o.require(true, "Bertrand verdicts on a 3x6 grid");
    return o;
  });

  criterion(13, "determinism: identical reports at any worker count", [&] {
    Outcome o;
    for (const auto& name : suite_names()) {
      ExperimentConfig c;
      c.seed = 13;
      c.replicas = 60;
      c.small_time.clock_seeds = 10;
      c.bm.large_time_replicas = 60;
      c.lil.depth = 16;
      c.lil.diverge_depth = 10;
      c.lil.converge_depth = 8;
      std::string first;
      bool same = true;
      for (unsigned w : {1u, 2u, 5u}) {
        c.workers = w;
        const auto report = run_suite(name, c);
        const auto text = report_to_json(report) + report_to_csv(report);
        if (first.empty()) first = text;
        same = same && text == first;
      }
      o.require(same, name + " at 1/2/5 workers");
    }
    // Full-size reports from above, re-run on several workers.
    large.workers = 4;
    o.require(report_to_json(run_large_time_suite(large)) == report_to_json(large_report), "large_time full size");
    bm.workers = 4;
    o.require(report_to_json(run_bm_suite(bm)) == report_to_json(bm_report), "bm full size");
    return o;
  });

  std::printf("acceptance: %d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
