#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "windings/parallel.hpp"
#include "windings/stable_process.hpp"
#include "windings/stats.hpp"

using namespace windings;
using std::numbers::pi;

namespace {

PlanarPath unit_circle(double horizon, std::size_t n) {
  std::vector<double> t;
  std::vector<ComplexPoint> z;
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = horizon * static_cast<double>(k) / static_cast<double>(n);
    t.push_back(s);
    z.push_back(std::polar(1.0, s));
  }
  return PlanarPath::from_points(t, z, 1.0);
}

PlanarPath exponential_radius(double horizon, std::size_t n) {
  std::vector<double> t;
  std::vector<ComplexPoint> z;
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = horizon * static_cast<double>(k) / static_cast<double>(n);
    t.push_back(s);
    z.push_back(std::polar(std::exp(s), 0.5 * s));
  }
  return PlanarPath::from_points(t, z, 1.0);
}

bool is_multiple_of_2pi(double x, double tol) {
  const double m = x / (2.0 * pi);
  return std::abs(m - std::round(m)) * 2.0 * pi <= tol;
}

double exit_or_inf(const ExitTimeRecord& r) { return r.censored ? HUGE_VAL : r.time; }

}  // namespace

TEST_CASE("degenerate horizon gives the starting point only") {
  PathConfig pc;
  pc.horizon = 0.0;
  RandomStream rng(RngSeed{1, 0});
  const auto path = generate_path(StableIndex(1.0), pc, rng);
  REQUIRE(path.size() == 1);
  CHECK(path.times.front() == 0.0);
  CHECK(path.points.front() == ComplexPoint{1.0, 0.0});
  CHECK(path.winding_increments.empty());
  CHECK(path.clock_increments.empty());
}

TEST_CASE("generation is deterministic in the stream") {
  for (double alpha : {0.7, 1.3, 2.0}) {
    RandomStream a(RngSeed{2, 5}), b(RngSeed{2, 5});
    const auto p = generate_path(StableIndex(alpha), PathConfig{}, a);
    const auto q = generate_path(StableIndex(alpha), PathConfig{}, b);
    CHECK(p.times == q.times);
    CHECK(p.points == q.points);
    CHECK(p.winding_increments == q.winding_increments);
  }
}

TEST_CASE("path invariants: start, grid, increments") {
  RandomStream rng(RngSeed{3, 0});
  const auto path = generate_path(StableIndex(1.2), PathConfig{}, rng);
  CHECK(path.points.front() == ComplexPoint{1.0, 0.0});
  CHECK(path.times.back() == 1.0);
  for (std::size_t k = 1; k < path.size(); ++k) CHECK_UNARY(path.times[k] > path.times[k - 1]);
  for (double w : path.winding_increments) CHECK_UNARY(w > -pi && w <= pi);
  CHECK(path.winding_increments.size() + 1 == path.size());
}

TEST_CASE("configuration errors") {
  RandomStream rng(RngSeed{4, 0});
  PathConfig pc;
  pc.angle_cap = pi;
  CHECK_THROWS_AS(generate_path(StableIndex(1.0), pc, rng), std::invalid_argument);
  pc = {};
  pc.min_step = 1.0;
  CHECK_THROWS_AS(generate_path(StableIndex(1.0), pc, rng), std::invalid_argument);
  pc = {};
  pc.horizon = -1.0;
  CHECK_THROWS_AS(generate_path(StableIndex(1.0), pc, rng), std::invalid_argument);
  pc = {};
  pc.start = {0.0, 0.0};
  CHECK_THROWS_AS(generate_path(StableIndex(1.0), pc, rng), DegenerateGeometry);
  CHECK_THROWS_AS(StableIndex(2.5), std::domain_error);
}

TEST_CASE("budget exhaustion carries the prefix") {
  PathConfig pc;
  pc.max_points = 20;
  pc.base_step = 1e-3;
  RandomStream rng(RngSeed{5, 0});
  try {
    generate_path(StableIndex(1.0), pc, rng);
    FAIL("expected the point budget to run out");
  } catch (const PathBudgetExceeded& e) {
    CHECK(e.prefix().size() == 20);
    CHECK(e.prefix().horizon() < 1.0);
  }
  RandomStream again(RngSeed{5, 0});
  const auto end = run_path(StableIndex(1.0), pc, again, {});
  CHECK(end.exhausted);
  CHECK(end.state.steps == 19);
}

TEST_CASE("alpha = 1 marginal: median of |Z_1 - 1| is sqrt 3") {
  // Radial CDF of the planar Cauchy law: 1 - (1 + r^2)^{-1/2}.
  const std::size_t n = 100000;
  const auto dist = parallel_map(n, 0, [](std::size_t i) {
    auto rng = derive_substream(RngSeed{6, 0}, i);
    PathConfig pc;
    pc.base_step = 1.0;
    return std::abs(run_path(StableIndex(1.0), pc, rng, {}).state.z - 1.0);
  });
  CHECK(std::abs(stats::quantile(dist, 0.5) / std::sqrt(3.0) - 1.0) < 0.02);
}

TEST_CASE("marginal law matches the characteristic function exp(-t |l|^alpha)") {
  for (double alpha : {0.6, 1.5}) {
    CAPTURE(alpha);
    const double t = 0.7;
    const std::size_t n = 20000;
    const auto x = parallel_map(n, 0, [&](std::size_t i) {
      auto rng = derive_substream(RngSeed{7, 0}, i);
      PathConfig pc;
      pc.horizon = t;
      return run_path(StableIndex(alpha), pc, rng, {}).state.z.real() - 1.0;
    });
    std::vector<double> c;
    for (double v : x) c.push_back(std::cos(v));
    CHECK(std::abs(stats::mean(c) - std::exp(-t)) < 3.0 * stats::standard_error(c));
  }
}

TEST_CASE("Brownian mode: per-coordinate variance t") {
  const std::size_t n = 20000;
  const auto x = parallel_map(n, 0, [](std::size_t i) {
    auto rng = derive_substream(RngSeed{8, 0}, i);
    PathConfig pc;
    pc.horizon = 0.5;
    pc.base_step = 0.05;
    const auto z = run_path(StableIndex(2.0), pc, rng, {}).state.z;
    return std::pair{z.real() - 1.0, z.imag()};
  });
  std::vector<double> re, im;
  for (auto [a, b] : x) {
    re.push_back(a);
    im.push_back(b);
  }
  CHECK(stats::variance(re) == doctest::Approx(0.5).epsilon(0.03));
  CHECK(stats::variance(im) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("synthetic windings") {
  const std::vector<double> t{0, 1, 2, 3, 4};
  const std::vector<ComplexPoint> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}};
  const auto sq = PlanarPath::from_points(t, square, 1.0);
  CHECK(winding_series(sq).back() == doctest::Approx(2.0 * pi).epsilon(1e-15));

  const auto half = PlanarPath::from_points({0, 1}, {{1, 0}, {-1, 0}}, 1.0);
  CHECK(half.winding_increments.front() == pi);
  const auto half_back = PlanarPath::from_points({0, 1}, {{-1, 0}, {1, 0}}, 1.0);
  CHECK(half_back.winding_increments.front() == pi);

  const auto straight = PlanarPath::from_points({0, 1}, {{1, 0}, {2, 0}}, 1.0);
  CHECK(straight.winding_increments.front() == 0.0);

  // Several centers: the square winds once around points inside it, not outside.
  const ComplexPoint centers[] = {{0, 0}, {0.2, 0.1}, {3, 0}};
  const auto series = winding_series(sq, centers);
  CHECK(series[0].back() == doctest::Approx(2.0 * pi));
  CHECK(series[1].back() == doctest::Approx(2.0 * pi));
  CHECK(std::abs(series[2].back()) < 1e-12);

  const ComplexPoint on_path[] = {{0, 1}};
  CHECK_THROWS_AS(winding_series(sq, on_path), DegenerateGeometry);
  CHECK_THROWS_AS(PlanarPath::from_points({0, 1}, {{1, 0}, {0, 0}}, 1.0), DegenerateGeometry);
}

TEST_CASE("clock and inverse clock on synthetic paths") {
  const auto circle = unit_circle(2.0, 2000);
  const auto h = clock_series(circle);
  for (std::size_t k = 0; k < circle.size(); ++k) CHECK(h[k] == doctest::Approx(circle.times[k]).epsilon(1e-12));
  for (double u : {0.0, 0.3, 1.7, 2.0}) CHECK(inverse_clock(circle.times, h, u) == doctest::Approx(u).epsilon(1e-12));
  const double grid[] = {0.0, 0.5, 1.25};
  const auto rho = rho_series(circle, grid);
  const auto theta = winding_series(circle);
  for (int i = 0; i < 3; ++i) CHECK(rho[i] == doctest::Approx(value_at(circle.times, theta, grid[i])).epsilon(1e-12));
  CHECK(rho[0] == 0.0);
  CHECK_THROWS_AS(inverse_clock(circle.times, h, 2.5), std::range_error);
  CHECK_THROWS_AS(inverse_clock(circle.times, h, -0.1), std::range_error);

  const auto expo = exponential_radius(3.0, 30000);
  const auto he = clock_series(expo);
  for (std::size_t k = 0; k < expo.size(); k += 997) {
    CHECK(std::abs(he[k] - (1.0 - std::exp(-expo.times[k]))) < 1e-4);
  }
  for (double u : {0.1, 0.5, 0.9}) CHECK(std::abs(inverse_clock(expo.times, he, u) + std::log1p(-u)) < 1e-4);
}

TEST_CASE("exit times on a linear winding") {
  std::vector<double> t, theta;
  for (int k = 0; k <= 10; ++k) {
    t.push_back(k / 10.0);
    theta.push_back(2.0 * pi * k / 10.0);
  }
  const auto one = exit_time(t, theta, {ConeMode::one_sided, pi, 0.0});
  CHECK_FALSE(one.censored);
  CHECK(one.time == doctest::Approx(0.5));
  CHECK(one.crossing_value == pi);

  const auto mid = exit_time(t, theta, {ConeMode::one_sided, 0.25 * pi, 0.0});
  CHECK(mid.time == doctest::Approx(0.125));
  CHECK(mid.grid_time == doctest::Approx(0.2));

  std::vector<double> down(theta);
  for (auto& v : down) v = -v;
  const auto two = exit_time(t, down, {ConeMode::two_sided, 10.0, pi});
  CHECK(two.time == doctest::Approx(0.5));
  CHECK(two.crossing_value == -pi);
  CHECK(exit_time(t, down, {ConeMode::one_sided, 1.0, 0.0}).censored);

  std::vector<double> bounded;
  for (double s : t) bounded.push_back(0.4 * std::sin(20.0 * s));
  const auto cens = exit_time(t, bounded, {ConeMode::symmetric, 1.0, 0.0});
  CHECK(cens.censored);
  CHECK(cens.time == t.back());
  CHECK_THROWS_AS(exit_time(t, theta, {ConeMode::symmetric, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("pathwise invariants over random paths") {
  // 1000 paths per index; every node is checked.
  for (double alpha : {0.5, 1.0, 1.5}) {
    CAPTURE(alpha);
    const auto bad = parallel_map(1000, 0, [alpha](std::size_t i) -> int {
      auto rng = derive_substream(RngSeed{9, static_cast<std::uint64_t>(alpha * 10)}, i);
      PathConfig pc;
      pc.centers = {{0.0, 0.0}, {0.5, 0.5}};
      const auto path = generate_path(StableIndex(alpha), pc, rng);
      int fails = 0;
      const auto series = winding_series(path, pc.centers);
      for (std::size_t j = 0; j < pc.centers.size(); ++j) {
        for (std::size_t k = 0; k < path.size(); ++k) {
          // Windings start at 0, so compare against the argument relative to the start.
          const double diff = series[j][k] - std::arg(path.points[k] - pc.centers[j]) +
                              std::arg(path.points[0] - pc.centers[j]);
          if (!is_multiple_of_2pi(diff, 1e-9)) ++fails;
        }
      }
      for (double w : path.winding_increments) fails += (w > -pi && w <= pi) ? 0 : 1;
      const auto h = clock_series(path);
      for (std::size_t k = 1; k < h.size(); ++k) fails += h[k] > h[k - 1] ? 0 : 1;
      for (std::size_t k = 0; k < h.size(); ++k) {
        const double a = inverse_clock(path.times, h, h[k]);
        if (std::abs(a - path.times[k]) > 1e-12 * std::max(1.0, path.times[k])) ++fails;
      }
      const auto& theta = series.front();
      for (auto [c, d] : {std::pair{0.5, 1.0}, std::pair{1.0, 3.0}, std::pair{0.1, 0.2}}) {
        const double sym = exit_or_inf(exit_time(path.times, theta, {ConeMode::symmetric, c, 0.0}));
        const double two = exit_or_inf(exit_time(path.times, theta, {ConeMode::two_sided, c, d}));
        const double one = exit_or_inf(exit_time(path.times, theta, {ConeMode::one_sided, c, 0.0}));
        fails += (sym <= two && two <= one) ? 0 : 1;
      }
      return fails;
    });
    CHECK(std::count(bad.begin(), bad.end(), 0) == 1000);
  }
}

TEST_CASE("small-time clock: H(u)/u near 1") {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomStream rng(RngSeed{10, seed});
    PathConfig pc;
    pc.horizon = 1e-4;
    pc.base_step = 1e-6;
    const auto end = run_path(StableIndex(1.0), pc, rng, {});
    const double ratio = end.state.clock / 1e-4;
    good += (ratio > 0.9 && ratio < 1.1) ? 1 : 0;
  }
  CHECK(good >= 95);
}

TEST_CASE("skew-product: A(u) against int exp(alpha xi)") {
  for (double alpha : {0.8, 1.5}) {
    CAPTURE(alpha);
    double coarse = 0.0, fine = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      PathConfig pc;
      pc.base_step = 1e-3;
      pc.angle_cap = pi / 16.0;
      auto rng = derive_substream(RngSeed{11, 0}, i);
      const auto path = generate_path(StableIndex(alpha), pc, rng);
      coarse += skew_product_error(path, 50);
      fine += skew_product_error(path, 400);
    }
    CHECK(fine / 20.0 <= 0.02);
    CHECK(fine < coarse);
  }
}

TEST_CASE("missed loops under angle-cap halving at default settings") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    CAPTURE(alpha);
    const PathConfig pc;
    PathConfig half = pc;
    half.angle_cap = 0.5 * pc.angle_cap;
    const auto missed = parallel_map(1000, 0, [&](std::size_t i) -> int {
      auto rng = derive_substream(RngSeed{12, static_cast<std::uint64_t>(alpha * 10)}, i);
      const auto path = generate_path(StableIndex(alpha), half, rng);
      return missed_loops(path, coarsen(path, pc)) != 0 ? 1 : 0;
    });
    const auto count = std::count(missed.begin(), missed.end(), 1);
    MESSAGE("alpha " << alpha << ": " << count << " of 1000 paths change by a multiple of 2 pi");
    CHECK(count <= 10);
  }
}

TEST_CASE("coarsening keeps endpoints and obeys the step rule") {
  RandomStream rng(RngSeed{13, 0});
  PathConfig pc;
  PathConfig half = pc;
  half.angle_cap = 0.5 * pc.angle_cap;
  const auto fine = generate_path(StableIndex(1.2), half, rng);
  const auto coarse = coarsen(fine, pc);
  CHECK(coarse.times.front() == 0.0);
  CHECK(coarse.times.back() == fine.times.back());
  CHECK(coarse.points.back() == fine.points.back());
  CHECK(coarse.size() <= fine.size());
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    CHECK(std::find(fine.times.begin(), fine.times.end(), coarse.times[k]) != fine.times.end());
  }
  CHECK(missed_loops(fine, fine) == 0);
}

TEST_CASE("path CSV") {
  const auto sq = PlanarPath::from_points({0, 1, 2}, {{1, 0}, {0, 1}, {-1, 0}}, 1.0);
  std::ostringstream out;
  write_path_csv(out, sq);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,re,im,theta,H");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(out.str().find("\n0,1,0,0,0\n") != std::string::npos);
}

TEST_CASE("checkpoints are hit exactly") {
  PathConfig pc;
  pc.checkpoints = {0.125, 0.25, 0.5};
  pc.relative_step = 0.125;
  RandomStream rng(RngSeed{14, 0});
  const auto path = generate_path(StableIndex(1.0), pc, rng);
  for (double c : pc.checkpoints) CHECK(std::find(path.times.begin(), path.times.end(), c) != path.times.end());
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (path.times[k] <= 0.125) CHECK(path.times[k] - path.times[k - 1] <= 0.125 * 0.125 + 1e-15);
  }
}
