#include "windings/samplers.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace windings {

StableIndex::StableIndex(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::domain_error("stable index must lie in (0, 2], got " + std::to_string(alpha));
  }
}

const StableIndex& StableIndex::require_planar_stable() const {
  if (!(alpha_ < 2.0)) {
    throw std::domain_error("planar stable routines need alpha in (0, 2)");
  }
  return *this;
}

double sample_positive_stable(double rho, RandomStream& rng) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::domain_error("positive stable index must lie in (0, 1)");
  }
  using std::numbers::pi;
  // Kanter: X = sin(rho U) / sin(U)^{1/rho} * (sin((1-rho) U) / E)^{(1-rho)/rho}
  const double u = pi * rng.uniform_open();
  const double e = rng.exponential();
  const double a = std::sin(rho * u) / std::pow(std::sin(u), 1.0 / rho);
  const double b = std::pow(std::sin((1.0 - rho) * u) / e, (1.0 - rho) / rho);
  return a * b;
}

double sample_symmetric_stable(double alpha, RandomStream& rng) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::domain_error("symmetric stable index must lie in (0, 2]");
  }
  using std::numbers::pi;
  const double v = pi * (rng.uniform_open() - 0.5);
  if (alpha == 1.0) return std::tan(v);
  const double w = rng.exponential();
  const double head = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
  return head * std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

double sample_cauchy(RandomStream& rng) {
  return std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
}

}  // namespace windings
