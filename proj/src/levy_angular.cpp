#include "windings/levy_angular.hpp"

#include <boost/math/special_functions/fpclassify.hpp>
// pchip in this Boost release calls isnan unqualified.
namespace boost::math::interpolators { using boost::math::isnan; }
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "windings/quadrature.hpp"

namespace windings {
namespace {

using std::numbers::pi;
constexpr double kTol = 1e-11;

void require_stable_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::domain_error("alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
}

/// int_0^{pi/2} ... full Beta integral int_0^pi sin(v)^alpha dv.
double full_sine_power_integral(double alpha) {
  return std::sqrt(pi) * std::tgamma(0.5 * (1.0 + alpha)) / std::tgamma(1.0 + 0.5 * alpha);
}

/// S(x) = int_0^x sin(v)^alpha dv for 0 <= x <= pi/2.
double partial_sine_power_integral(double alpha, double x) {
  if (x <= 0.0) return 0.0;
  if (alpha == 1.0) return 2.0 * std::pow(std::sin(0.5 * x), 2);
  // Double-exponential rule: the v^alpha endpoint behaviour costs nothing extra.
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate([alpha](double v) { return std::pow(std::sin(v), alpha); }, 0.0, x, 1e-13);
}

/// J(phi) = int_{phi - pi/2}^{pi/2} cos(u)^alpha du = int_0^{pi - phi} sin(v)^alpha dv.
double ray_integral(double alpha, double phi) {
  if (phi <= 0.5 * pi) return full_sine_power_integral(alpha) - partial_sine_power_integral(alpha, phi);
  return partial_sine_power_integral(alpha, pi - phi);
}

/// J(x) / sin(x)^{1+alpha} for small x = pi - phi, where both vanish.
double ray_ratio_near_pi(double alpha, double x) {
  return 1.0 / (1.0 + alpha) + x * x / (2.0 * (3.0 + alpha));
}

constexpr double kNearPi = 1e-4;  // series error O(x^4) is below rounding here

/// Li_2(x) for 0 <= x <= 1: power series, reflected above 1/2.
double dilog(double x) {
  if (x > 0.5) {
    const double y = 1.0 - x;
    return pi * pi / 6.0 - (y > 0.0 ? std::log(x) * std::log(y) : 0.0) - dilog(y);
  }
  double sum = 0.0;
  double term = x;
  for (int n = 1; n < 200 && term > 1e-18 * sum; ++n, term *= x) sum += term / (static_cast<double>(n) * n);
  return sum;
}

/// Q(1/s) for s in [0, 1].
double angular_square_outside(double s) {
  return 2.0 * pi * pi * pi / 3.0 - 4.0 * pi * dilog(s) + pi * dilog(s * s);
}

/// Q(r) = int_{-pi}^{pi} arg(1 + r e^{i psi})^2 dpsi, from the Fourier series
/// of the argument: pi Li_2(r^2) inside the unit disc, and with s = 1/r
/// 2 pi^3/3 - 4 pi Li_2(s) + pi Li_2(s^2) outside.
double angular_square_integral(double r) {
  if (r <= 1.0) return pi * dilog(r * r);
  return angular_square_outside(1.0 / r);
}

/// Q(r) / r^2 for r in [0, 1], exact as r -> 0.
double angular_square_ratio(double r) {
  if (r < 1e-8) return pi;
  return angular_square_integral(r) / (r * r);
}

}  // namespace

double nu_prefactor(double alpha) {
  require_stable_alpha(alpha);
  return alpha * std::exp2(alpha - 1.0) * std::tgamma(1.0 + 0.5 * alpha) /
         (pi * std::tgamma(1.0 - 0.5 * alpha));
}

double density_nu(double alpha, ComplexPoint x) {
  const double r = std::abs(x);
  if (r == 0.0) throw SingularityError("Levy density of Z is singular at the origin");
  return nu_prefactor(alpha) * std::pow(r, -2.0 - alpha);
}

double clock_constant(double alpha) {
  require_stable_alpha(alpha);
  return std::exp2(-alpha) * std::tgamma(1.0 - 0.5 * alpha) / std::tgamma(1.0 + 0.5 * alpha);
}

double scaled_angular_density(double alpha, double phi) {
  const double c = nu_prefactor(alpha);
  const double a = std::abs(phi);
  if (a > pi) return 0.0;
  if (a == 0.0) return c * full_sine_power_integral(alpha);
  const double p = std::pow(a, 1.0 + alpha);
  if (pi - a < kNearPi) return c * p * (std::cos(a) * ray_ratio_near_pi(alpha, pi - a) + 1.0 / alpha);
  const double s = a <= 0.5 * pi ? std::sin(a) : std::sin(pi - a);
  const double j = ray_integral(alpha, a);
  return c * (std::cos(a) * j * std::pow(a / s, 1.0 + alpha) + p / alpha);
}

double angular_density(double alpha, double phi) {
  require_stable_alpha(alpha);
  const double a = std::abs(phi);
  if (a == 0.0) throw SingularityError("angular Levy density is singular at 0");
  if (a > pi) return 0.0;
  return scaled_angular_density(alpha, a) / std::pow(a, 1.0 + alpha);
}

double angular_density_closed_form(double alpha, double phi) {
  require_stable_alpha(alpha);
  const double a = std::abs(phi);
  if (a == 0.0) throw SingularityError("angular Levy density is singular at 0");
  if (a > pi) return 0.0;
  if (pi - a < kNearPi) return nu_prefactor(alpha) * (std::cos(a) * ray_ratio_near_pi(alpha, pi - a) + 1.0 / alpha);
  const double p = 0.5 * (1.0 + alpha);
  const double s = a <= 0.5 * pi ? std::sin(a) : std::sin(pi - a);
  // S(x) = B(sin^2 x; (1+alpha)/2, 1/2) / 2 for x in [0, pi/2]
  const double partial = 0.5 * boost::math::beta(p, 0.5, s * s);
  const double j = a <= 0.5 * pi ? boost::math::beta(p, 0.5) - partial : partial;
  return nu_prefactor(alpha) * (std::cos(a) * j / std::pow(s, 1.0 + alpha) + 1.0 / alpha);
}

double polar_moment_integral(double alpha) {
  require_stable_alpha(alpha);
  // r in (0, 1]: r^{-1-alpha} Q(r) with Q(r) ~ pi r^2
  auto inner = [](double r) { return angular_square_ratio(r); };
  const double near = quadrature::integrate_left_power(inner, 1.0 - alpha, 0.0, 1.0, 1e-10).value;
  // r = 1/s in (0, 1]: s^{alpha-1} Q(1/s) with Q(inf) = 2 pi^3 / 3
  auto outer = [](double s) { return angular_square_outside(s); };
  const double far = quadrature::integrate_left_power(outer, alpha - 1.0, 0.0, 1.0, 1e-10).value;
  return near + far;
}

double angular_second_moment(double alpha) {
  require_stable_alpha(alpha);
  auto g = [alpha](double phi) { return scaled_angular_density(alpha, phi); };
  return 2.0 * quadrature::integrate_left_power(g, 1.0 - alpha, 0.0, pi, kTol).value;
}

double characteristic_exponent(double alpha, double u) {
  require_stable_alpha(alpha);
  if (!std::isfinite(u)) throw std::domain_error("characteristic exponent needs finite u");
  u = std::abs(u);
  if (u == 0.0) return 0.0;
  // (1 - cos(u phi)) pi~ = phi^{1-alpha} * [2 sin^2(u phi / 2) / phi^2] * scaled(phi)
  auto g = [alpha, u](double phi) {
    const double x = 0.5 * u * phi;
    const double sinc = x < 1e-8 ? 1.0 : std::sin(x) / x;
    return 0.5 * u * u * sinc * sinc * scaled_angular_density(alpha, phi);
  };
  const auto pieces = static_cast<int>(std::max(1.0, std::ceil(u / 2.0)));
  const double width = pi / pieces;
  double total = quadrature::integrate_left_power(g, 1.0 - alpha, 0.0, width, kTol).value;
  auto weighted = [&](double phi) { return std::pow(phi, 1.0 - alpha) * g(phi); };
  // Later pieces end on zeros of sin^2, where a subinterval-relative rule
  // never settles; hold each piece to a tolerance relative to its own size.
  for (int i = 1; i < pieces; ++i) {
    const double lo = i * width;
    const double hi = lo + width;
    const double rough = quadrature::integrate_absolute(weighted, lo, hi, HUGE_VAL).value;
    total += quadrature::integrate_absolute(weighted, lo, hi, kTol * rough).value;
  }
  return 2.0 * total;
}

ConstantsTable compute_constants(double alpha) {
  require_stable_alpha(alpha);
  if (alpha > 2.0 - 1e-6) {
    throw PrecisionError("alpha within 1e-6 of 2: Gamma(1 - alpha/2) is too large to resolve");
  }
  ConstantsTable t;
  t.alpha = alpha;
  t.C_nu = nu_prefactor(alpha);
  t.K = clock_constant(alpha);
  t.I = polar_moment_integral(alpha);
  t.k = t.C_nu * t.I;
  t.r = alpha * t.I / (2.0 * pi);
  for (double phi : {1e-4, 1e-6, 1e-8}) t.L_tilde = scaled_angular_density(alpha, phi);
  return t;
}

// Truncated variance --------------------------------------------------------

TruncatedVariance::TruncatedVariance(double alpha) : alpha_(alpha) { require_stable_alpha(alpha); }

double TruncatedVariance::L(double x) const {
  if (!(x > 0.0)) throw std::domain_error("L(x) needs x > 0");
  if (x >= pi) return 0.0;
  const double a = alpha_;
  // int_x^pi pi~ = int_{log x}^{log pi} scaled(e^v) e^{-alpha v} dv
  auto f = [a](double v) { return scaled_angular_density(a, std::exp(v)) * std::exp(-a * v); };
  return 2.0 * quadrature::integrate(f, std::log(x), std::log(pi), kTol).value;
}

double TruncatedVariance::U(double x) const {
  if (!(x > 0.0)) throw std::domain_error("U(x) needs x > 0");
  const double a = alpha_;
  const double top = std::min(x, pi);
  auto g = [a](double phi) { return scaled_angular_density(a, phi); };
  const double second = quadrature::integrate_left_power(g, 1.0 - a, 0.0, top, kTol).value;
  // Fubini: 2 int_0^x y L(y) dy = 2 int_0^x phi^2 pi~ + x^2 L(x)
  return 2.0 * second + x * x * L(x);
}

double TruncatedVariance::h(double y) const { return U(y) / (y * y); }

TruncatedVariance truncated_variance(double alpha) { return TruncatedVariance(alpha); }

// Jump table ----------------------------------------------------------------

struct AngularLevyModel::Interpolants {
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  Pchip log_tail;    // log x -> log tail(x), nodes 0..n-2
  Pchip log_second;  // log x -> log second(x)
  Pchip inverse;     // log tail -> log x
};

AngularLevyModel::AngularLevyModel(double alpha, double epsilon, double table_floor,
                                   std::size_t table_size)
    : alpha_(alpha), epsilon_(epsilon) {
  require_stable_alpha(alpha);
  if (!(epsilon > 0.0 && epsilon < pi)) throw std::domain_error("jump cutoff must lie in (0, pi)");
  if (table_floor <= 0.0) table_floor = epsilon;
  table_floor = std::min(table_floor, epsilon);
  if (table_size < 16) throw std::domain_error("jump table needs at least 16 nodes");

  const std::size_t n = table_size;
  nodes_.resize(n);
  const double lo = std::log(table_floor);
  const double hi = std::log(pi);
  for (std::size_t i = 0; i < n; ++i) {
    nodes_[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  nodes_.back() = pi;

  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const double a = alpha;
  auto tail_density = [a](double v) { return scaled_angular_density(a, std::exp(v)) * std::exp(-a * v); };
  auto second_density = [a](double v) {
    return scaled_angular_density(a, std::exp(v)) * std::exp((2.0 - a) * v);
  };

  tail_.assign(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    tail_[i] = tail_[i + 1] + Gauss::integrate(tail_density, std::log(nodes_[i]), std::log(nodes_[i + 1]));
  }
  second_.assign(n, 0.0);
  auto g = [a](double phi) { return scaled_angular_density(a, phi); };
  second_[0] = quadrature::integrate_left_power(g, 1.0 - a, 0.0, nodes_[0], kTol).value;
  for (std::size_t i = 1; i < n; ++i) {
    second_[i] = second_[i - 1] +
                 Gauss::integrate(second_density, std::log(nodes_[i - 1]), std::log(nodes_[i]));
  }

  std::vector<double> lx, lt, ls;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    lx.push_back(std::log(nodes_[i]));
    lt.push_back(std::log(tail_[i]));
  }
  for (std::size_t i = 0; i < n; ++i) ls.push_back(std::log(second_[i]));
  std::vector<double> lx_all;
  for (double x : nodes_) lx_all.push_back(std::log(x));
  std::vector<double> inv_x(lx.rbegin(), lx.rend());
  std::vector<double> inv_t(lt.rbegin(), lt.rend());
  interp_ = std::make_shared<const Interpolants>(Interpolants{
      Interpolants::Pchip(std::vector<double>(lx), std::move(lt)),
      Interpolants::Pchip(std::move(lx_all), std::move(ls)),
      Interpolants::Pchip(std::move(inv_t), std::move(inv_x)),
  });
}

namespace {
double one_sided_tail(const std::vector<double>& nodes, const std::vector<double>& tail,
                      const boost::math::interpolators::pchip<std::vector<double>>& log_tail,
                      double x) {
  const std::size_t n = nodes.size();
  if (x >= pi) return 0.0;
  if (x >= nodes[n - 2]) return tail[n - 2] * (pi - x) / (pi - nodes[n - 2]);
  return std::exp(log_tail(std::log(x)));
}
}  // namespace

double AngularLevyModel::jump_intensity(double cutoff) const {
  if (cutoff < nodes_.front() * (1.0 - 1e-12)) {
    throw std::domain_error("cutoff below the jump table floor");
  }
  return 2.0 * one_sided_tail(nodes_, tail_, interp_->log_tail, std::max(cutoff, nodes_.front()));
}

double AngularLevyModel::small_jump_variance(double cutoff) const {
  if (!(cutoff > 0.0)) return 0.0;
  if (cutoff >= pi) return 2.0 * second_.back();
  if (cutoff <= nodes_.front()) {
    return 2.0 * second_.front() * std::pow(cutoff / nodes_.front(), 2.0 - alpha_);
  }
  return 2.0 * std::exp(interp_->log_second(std::log(cutoff)));
}

double AngularLevyModel::sample_jump_magnitude(double cutoff, RandomStream& rng) const {
  const std::size_t n = nodes_.size();
  const double total = one_sided_tail(nodes_, tail_, interp_->log_tail, std::max(cutoff, nodes_.front()));
  const double v = total * rng.uniform_open();
  double x;
  if (v <= tail_[n - 2]) {
    x = pi - (pi - nodes_[n - 2]) * v / tail_[n - 2];
  } else {
    x = std::exp(interp_->inverse(std::log(v)));
  }
  return std::clamp(x, cutoff, pi);
}

double AngularLevyModel::increment(double duration, double cutoff, RandomStream& rng) const {
  if (!(duration >= 0.0)) throw std::domain_error("duration must be non-negative");
  if (duration == 0.0) return 0.0;
  cutoff = std::min(cutoff, nodes_[nodes_.size() - 2]);
  const auto jumps = rng.poisson(jump_intensity(cutoff) * duration);
  double sum = 0.0;
  for (std::uint64_t j = 0; j < jumps; ++j) {
    const double m = sample_jump_magnitude(cutoff, rng);
    sum += (rng.next_u64() >> 63) ? m : -m;
  }
  return sum + std::sqrt(small_jump_variance(cutoff) * duration) * rng.normal();
}

std::vector<double> AngularLevyModel::simulate(double horizon, std::size_t steps,
                                               RandomStream& rng) const {
  if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
  if (steps == 0) throw std::domain_error("grid needs at least one step");
  std::vector<double> rho(steps + 1, 0.0);
  const double dt = horizon / static_cast<double>(steps);
  for (std::size_t i = 1; i <= steps; ++i) rho[i] = rho[i - 1] + increment(dt, epsilon_, rng);
  return rho;
}

std::vector<double> AngularLevyModel::simulate_at(std::span<const double> times,
                                                  double relative_cutoff,
                                                  RandomStream& rng) const {
  std::vector<double> out;
  out.reserve(times.size());
  double t_prev = 0.0;
  double rho = 0.0;
  for (double t : times) {
    if (t < t_prev) throw std::domain_error("times must be increasing");
    const double dt = t - t_prev;
    if (dt > 0.0) {
      const double cutoff = std::max(nodes_.front(), relative_cutoff * std::pow(dt, 1.0 / alpha_));
      rho += increment(dt, cutoff, rng);
    }
    out.push_back(rho);
    t_prev = t;
  }
  return out;
}

std::vector<double> simulate_rho(double alpha, double horizon, double epsilon, RandomStream& rng,
                                 std::size_t steps) {
  // Table construction dominates short simulations; keep one model per (alpha, epsilon).
  static std::mutex lock;
  static std::map<std::pair<double, double>, std::shared_ptr<const AngularLevyModel>> cache;
  std::shared_ptr<const AngularLevyModel> model;
  {
    std::lock_guard guard(lock);
    auto& slot = cache[{alpha, epsilon}];
    if (!slot) slot = std::make_shared<const AngularLevyModel>(alpha, epsilon);
    model = slot;
  }
  return model->simulate(horizon, steps, rng);
}

}  // namespace windings
