#pragma once

#include <functional>

namespace windings::quadrature {

using Integrand = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b]; b may be +infinity.
Result integrate(const Integrand& f, double a, double b, double rel_tol = 1e-10);

/// Adaptive 15-point Gauss-Kronrod on finite [a, b] to an absolute error
/// target. Use this when the integrand has zeros: the relative rule keeps
/// splitting where rounding noise dominates a vanishing local estimate.
Result integrate_absolute(const Integrand& f, double a, double b, double abs_tol);

/// Integral of (x - a)^beta * g(x) over [a, b] for beta > -1. The power
/// weight is absorbed by x = a + (b - a) u^{1/(beta+1)}, so g only needs to
/// be smooth near a.
Result integrate_left_power(const Integrand& g, double beta, double a, double b,
                            double rel_tol = 1e-10);

/// Same as integrate_left_power with the weight (b - x)^beta at the right end.
Result integrate_right_power(const Integrand& g, double beta, double a, double b,
                             double rel_tol = 1e-10);

}  // namespace windings::quadrature
