#include "windings/stable_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "windings/format.hpp"

namespace windings {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOriginGuard = 1e-300;

/// Principal argument in (-pi, pi].
double principal_arg(ComplexPoint w) {
  const double a = std::atan2(w.imag(), w.real());
  return a == -kPi ? kPi : a;
}

double step_angle(ComplexPoint from, ComplexPoint to, ComplexPoint center) {
  return principal_arg((to - center) / (from - center));
}

double clock_piece(double dt, ComplexPoint a, ComplexPoint b, double alpha) {
  return 0.5 * dt * (std::pow(std::abs(a), -alpha) + std::pow(std::abs(b), -alpha));
}

}  // namespace

void PathConfig::validate() const {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be >= 0");
  if (!(base_step > 0.0)) throw std::invalid_argument("base_step must be positive");
  if (!(min_step > 0.0 && min_step <= base_step)) {
    throw std::invalid_argument("min_step must lie in (0, base_step]");
  }
  if (!(angle_cap > 0.0 && angle_cap < kPi)) throw std::invalid_argument("angle_cap must lie in (0, pi)");
  if (max_points < 2) throw std::invalid_argument("max_points must be at least 2");
  if (centers.empty()) throw std::invalid_argument("at least one center is required");
  if (!std::isfinite(start.real()) || !std::isfinite(start.imag())) {
    throw std::invalid_argument("start point must be finite");
  }
  for (auto c : centers) {
    if (c == start) throw DegenerateGeometry("path starts on a winding center");
  }
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw std::invalid_argument("checkpoints must be sorted");
  }
}

PlanarPath PlanarPath::from_points(std::vector<double> times, std::vector<ComplexPoint> points,
                                   double alpha, ComplexPoint center) {
  if (times.size() != points.size() || times.empty()) {
    throw std::invalid_argument("times and points must be non-empty and of equal length");
  }
  PlanarPath p;
  p.alpha = alpha;
  p.center = center;
  p.times = std::move(times);
  p.points = std::move(points);
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    if (p.points[k] == center) throw DegenerateGeometry("path point coincides with the center");
    if (k > 0 && !(p.times[k] > p.times[k - 1])) throw std::invalid_argument("times must increase");
  }
  for (std::size_t k = 1; k < p.points.size(); ++k) {
    p.winding_increments.push_back(step_angle(p.points[k - 1], p.points[k], center));
    p.clock_increments.push_back(
        clock_piece(p.times[k] - p.times[k - 1], p.points[k - 1], p.points[k], alpha));
  }
  return p;
}

PathBudgetExceeded::PathBudgetExceeded(PlanarPath prefix)
    : std::runtime_error("path point budget exhausted at t = " + format_double(prefix.times.back())),
      prefix_(std::move(prefix)) {}

namespace {

/// Shared stepping loop. `on_step` returns true to stop; returns whether the
/// budget ran out before the horizon.
template <class OnStep>
bool step_path(const StableIndex& index, const PathConfig& config, RandomStream& rng,
               std::size_t& resampled, OnStep&& on_step) {
  config.validate();
  const bool brownian = index.is_brownian();
  if (!brownian) index.require_planar_stable();
  const double alpha = index.value();
  const double step_power = brownian ? 2.0 : alpha;
  const ComplexPoint c0 = config.centers.front();

  std::vector<double> targets;
  for (double t : config.checkpoints) {
    if (t > 0.0 && t < config.horizon && (targets.empty() || t > targets.back())) targets.push_back(t);
  }
  targets.push_back(config.horizon);
  std::size_t next = 0;

  StepState s;
  s.z = config.start;
  double radius_power = std::pow(std::abs(s.z), -alpha);
  while (s.t < config.horizon) {
    if (s.steps + 1 >= config.max_points) return true;
    double d = std::numeric_limits<double>::infinity();
    for (auto c : config.centers) d = std::min(d, std::abs(s.z - c));
    double h = std::min(config.base_step, std::pow(config.angle_cap * d, step_power));
    if (config.relative_step > 0.0) {
      const double gap = targets[next] - (next == 0 ? 0.0 : targets[next - 1]);
      h = std::min(h, config.relative_step * gap);
    }
    h = std::max(h, config.min_step);
    const double target = targets[next];
    bool hit = false;
    if (s.t + h >= target) {
      h = target - s.t;
      hit = true;
    } else if (!(s.t + h > s.t)) {
      h = std::nextafter(s.t, target) - s.t;
    }

    ComplexPoint dz;
    for (;;) {
      const double var = brownian
                             ? h
                             : 2.0 * std::pow(h, 2.0 / alpha) * sample_positive_stable(0.5 * alpha, rng);
      const double sd = std::sqrt(var);
      dz = ComplexPoint(sd * rng.normal(), sd * rng.normal());
      bool clear = true;
      for (auto c : config.centers) clear = clear && std::abs(s.z + dz - c) > kOriginGuard;
      if (clear) break;
      ++resampled;
    }

    const double t_new = hit ? target : s.t + h;
    const double next_power = std::pow(std::abs(s.z + dz), -alpha);
    s.z_prev = s.z;
    s.z += dz;
    s.dt = t_new - s.t;
    s.t = t_new;
    // arg(1 + dz / (z - c)) keeps full precision when dz is tiny.
    s.winding_increment = principal_arg(1.0 + dz / (s.z_prev - c0));
    s.theta += s.winding_increment;
    s.clock_increment = 0.5 * s.dt * (radius_power + next_power);
    s.clock += s.clock_increment;
    radius_power = next_power;
    ++s.steps;
    if (hit) ++next;
    if (on_step(s)) break;
  }
  return false;
}

}  // namespace

PlanarPath generate_path(const StableIndex& index, const PathConfig& config, RandomStream& rng,
                         const StepObserver& stop) {
  PlanarPath path;
  path.alpha = index.value();
  path.center = config.centers.empty() ? ComplexPoint{} : config.centers.front();
  path.times.push_back(0.0);
  path.points.push_back(config.start);
  const bool exhausted = step_path(index, config, rng, path.resampled_steps, [&](const StepState& s) {
    path.times.push_back(s.t);
    path.points.push_back(s.z);
    path.winding_increments.push_back(s.winding_increment);
    path.clock_increments.push_back(s.clock_increment);
    return stop && stop(s);
  });
  if (exhausted) throw PathBudgetExceeded(std::move(path));
  return path;
}

PathEnd run_path(const StableIndex& index, const PathConfig& config, RandomStream& rng,
                 const StepObserver& observer) {
  PathEnd end;
  end.state.z = config.start;
  end.exhausted = step_path(index, config, rng, end.resampled_steps, [&](const StepState& s) {
    end.state = s;
    end.stopped = observer && observer(s);
    return end.stopped;
  });
  return end;
}

std::vector<double> winding_series(const PlanarPath& path) {
  std::vector<double> theta(path.size(), 0.0);
  for (std::size_t k = 1; k < path.size(); ++k) theta[k] = theta[k - 1] + path.winding_increments[k - 1];
  return theta;
}

std::vector<std::vector<double>> winding_series(const PlanarPath& path,
                                                std::span<const ComplexPoint> centers) {
  std::vector<std::vector<double>> out;
  out.reserve(centers.size());
  for (auto c : centers) {
    if (c == path.center && path.winding_increments.size() + 1 == path.size()) {
      out.push_back(winding_series(path));
      continue;
    }
    for (auto z : path.points) {
      if (z == c) throw DegenerateGeometry("winding center lies on the path");
    }
    std::vector<double> theta(path.size(), 0.0);
    for (std::size_t k = 1; k < path.size(); ++k) {
      theta[k] = theta[k - 1] + step_angle(path.points[k - 1], path.points[k], c);
    }
    out.push_back(std::move(theta));
  }
  return out;
}

std::vector<double> clock_series(const PlanarPath& path) {
  std::vector<double> h(path.size(), 0.0);
  for (std::size_t k = 1; k < path.size(); ++k) h[k] = h[k - 1] + path.clock_increments[k - 1];
  return h;
}

double inverse_clock(std::span<const double> times, std::span<const double> clock, double u) {
  if (times.size() != clock.size() || times.empty()) throw std::invalid_argument("series mismatch");
  if (!(u >= 0.0) || u > clock.back()) {
    throw std::range_error("clock value " + format_double(u) + " outside [0, H(horizon)]");
  }
  if (u == clock.back()) return times.back();
  const auto it = std::upper_bound(clock.begin(), clock.end(), u);
  const auto k = static_cast<std::size_t>(it - clock.begin());
  const double w = (u - clock[k - 1]) / (clock[k] - clock[k - 1]);
  return times[k - 1] + w * (times[k] - times[k - 1]);
}

double value_at(std::span<const double> times, std::span<const double> series, double t) {
  if (times.size() != series.size() || times.empty()) throw std::invalid_argument("series mismatch");
  if (t < times.front() || t > times.back()) throw std::range_error("time outside the path");
  if (t == times.back()) return series.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto k = static_cast<std::size_t>(it - times.begin());
  const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
  return series[k - 1] + w * (series[k] - series[k - 1]);
}

ExitTimeRecord exit_time(std::span<const double> times, std::span<const double> theta,
                         const ConeSpec& cone) {
  if (times.size() != theta.size() || times.empty()) throw std::invalid_argument("series mismatch");
  if (!(cone.upper > 0.0) || (cone.mode == ConeMode::two_sided && !(cone.lower > 0.0))) {
    throw std::invalid_argument("cone levels must be positive");
  }
  const double c = cone.upper;
  const double lo = cone.mode == ConeMode::symmetric ? -c : -cone.lower;
  const bool has_lower = cone.mode != ConeMode::one_sided;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    double level;
    if (theta[k] >= c) {
      level = c;
    } else if (has_lower && theta[k] <= lo) {
      level = lo;
    } else {
      continue;
    }
    ExitTimeRecord r;
    r.grid_time = times[k];
    r.crossing_value = level;
    if (k == 0) {
      r.time = times[0];
    } else {
      const double w = (level - theta[k - 1]) / (theta[k] - theta[k - 1]);
      r.time = times[k - 1] + std::clamp(w, 0.0, 1.0) * (times[k] - times[k - 1]);
    }
    return r;
  }
  return {times.back(), times.back(), true, theta.back()};
}

std::vector<double> rho_series(const PlanarPath& path, std::span<const double> u_grid) {
  const auto h = clock_series(path);
  const auto theta = winding_series(path);
  std::vector<double> rho;
  rho.reserve(u_grid.size());
  for (double u : u_grid) rho.push_back(value_at(path.times, theta, inverse_clock(path.times, h, u)));
  return rho;
}

double skew_product_error(const PlanarPath& path, std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("need at least one cell");
  const auto h = clock_series(path);
  std::vector<double> re(path.size()), im(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    re[k] = path.points[k].real();
    im[k] = path.points[k].imag();
  }
  const double du = h.back() / static_cast<double>(cells);
  auto radius_power = [&](double a) {
    const double x = value_at(path.times, re, a), y = value_at(path.times, im, a);
    return std::pow(std::hypot(x, y), path.alpha);  // exp(alpha * xi)
  };
  double integral = 0.0;
  double a_prev = 0.0;
  double f_prev = radius_power(0.0);
  double worst = 0.0;
  for (std::size_t j = 1; j <= cells; ++j) {
    const double u = j == cells ? h.back() : du * static_cast<double>(j);
    const double a = inverse_clock(path.times, h, u);
    const double f = radius_power(a);
    integral += 0.5 * du * (f_prev + f);
    worst = std::max(worst, std::abs(a - integral));
    a_prev = a;
    f_prev = f;
  }
  return worst / a_prev;
}

PlanarPath coarsen(const PlanarPath& fine, const PathConfig& config) {
  config.validate();
  if (fine.size() == 0) throw std::invalid_argument("cannot coarsen an empty path");
  const double step_power = fine.alpha >= 2.0 ? 2.0 : fine.alpha;
  std::vector<double> t{fine.times.front()};
  std::vector<ComplexPoint> z{fine.points.front()};
  std::size_t k = 0;
  const std::size_t last = fine.size() - 1;
  while (k < last) {
    double d = std::numeric_limits<double>::infinity();
    for (auto c : config.centers) d = std::min(d, std::abs(fine.points[k] - c));
    const double h = std::max(config.min_step, std::min(config.base_step, std::pow(config.angle_cap * d, step_power)));
    std::size_t j = k + 1;
    while (j < last && fine.times[j + 1] - fine.times[k] <= h) ++j;
    t.push_back(fine.times[j]);
    z.push_back(fine.points[j]);
    k = j;
  }
  return PlanarPath::from_points(std::move(t), std::move(z), fine.alpha, fine.center);
}

long missed_loops(const PlanarPath& fine, const PlanarPath& coarse) {
  const auto a = winding_series(fine);
  const auto b = winding_series(coarse);
  return std::lround((a.back() - b.back()) / (2.0 * kPi));
}

void write_path_csv(std::ostream& out, const PlanarPath& path) {
  const auto theta = winding_series(path);
  const auto h = clock_series(path);
  out << "t,re,im,theta,H\n";
  for (std::size_t k = 0; k < path.size(); ++k) {
    out << format_double(path.times[k]) << ',' << format_double(path.points[k].real()) << ','
        << format_double(path.points[k].imag()) << ',' << format_double(theta[k]) << ','
        << format_double(h[k]) << '\n';
  }
}

}  // namespace windings
