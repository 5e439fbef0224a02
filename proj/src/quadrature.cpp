#include "windings/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace windings::quadrature {
namespace {
constexpr unsigned kMaxDepth = 20;
}

Result integrate(const Integrand& f, double a, double b, double rel_tol) {
  if (a == b) return {};
  Result out;
  double l1 = 0.0;
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, kMaxDepth, rel_tol, &out.error, &l1);
  return out;
}

Result integrate_absolute(const Integrand& f, double a, double b, double abs_tol) {
  auto split = [&](auto&& self, double lo, double hi, double tol, unsigned depth) -> Result {
    Result r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 0, 0.0, &r.error);
    r.error *= 0.5 * (hi - lo);  // this Boost release reports it on the reference interval [-1, 1]
    if (depth == 0 || r.error <= tol) return r;
    const double mid = 0.5 * (lo + hi);
    const Result left = self(self, lo, mid, 0.5 * tol, depth - 1);
    const Result right = self(self, mid, hi, 0.5 * tol, depth - 1);
    return {left.value + right.value, left.error + right.error};
  };
  if (a == b) return {};
  return split(split, a, b, abs_tol, kMaxDepth);
}

Result integrate_left_power(const Integrand& g, double beta, double a, double b,
                            double rel_tol) {
  if (!(beta > -1.0)) throw std::domain_error("power weight must exceed -1");
  const double p = beta + 1.0;
  const double width = b - a;
  // (x-a)^beta dx = width^p / p du  with  x = a + width u^{1/p}
  const double scale = std::pow(width, p) / p;
  auto mapped = [&](double u) { return g(a + width * std::pow(u, 1.0 / p)); };
  Result r = integrate(mapped, 0.0, 1.0, rel_tol);
  return {r.value * scale, r.error * scale};
}

Result integrate_right_power(const Integrand& g, double beta, double a, double b,
                             double rel_tol) {
  auto reflected = [&](double y) { return g(a + b - y); };
  return integrate_left_power(reflected, beta, a, b, rel_tol);
}

}  // namespace windings::quadrature
