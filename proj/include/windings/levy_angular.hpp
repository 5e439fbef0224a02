#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "windings/rng.hpp"

namespace windings {

using ComplexPoint = std::complex<double>;

struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised when alpha is too close to 2 for the constants to be computed
/// reliably (Gamma(1 - alpha/2) blows up).
struct PrecisionError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Prefactor of the planar Levy density nu(dx) = C_nu |x|^{-2-alpha} dx of
/// the isotropic stable process with E exp(i<l, Z_t>) = exp(-t |l|^alpha).
double nu_prefactor(double alpha);

/// Density of nu at x != 0.
double density_nu(double alpha, ComplexPoint x);

/// K(alpha) = E|Z_1|^{-alpha} for Z started at 0, the large-time clock rate.
double clock_constant(double alpha);

/// Levy density of the angular process rho, the image of nu under
/// z -> arg(1 + z). Even in phi, supported in [-pi, pi], singular at 0.
///
/// Written as a radial integral over the ray arg(w) = phi, w = 1 + z, and
/// rearranged with r = cos(phi) + sin(phi) tan(u):
///   pi~(phi) = C_nu [cos(phi) J(phi) / sin(phi)^{1+alpha} + 1/alpha],
///   J(phi)   = int_{phi - pi/2}^{pi/2} cos(u)^alpha du,
/// J evaluated by tanh-sinh quadrature.
double angular_density(double alpha, double phi);

/// |phi|^{1+alpha} * angular_density(alpha, phi), bounded near 0.
double scaled_angular_density(double alpha, double phi);

/// Same density with J(phi) through the incomplete Beta function. Cross-check
/// only: the sign of cos(phi) selects the branch.
double angular_density_closed_form(double alpha, double phi);

/// I(alpha) = int_C |z|^{-2-alpha} arg(1+z)^2 dz, computed in polar
/// coordinates around 0 by nested quadrature.
double polar_moment_integral(double alpha);

/// int_{-pi}^{pi} phi^2 pi~(phi) dphi, by one-dimensional quadrature of the
/// angular density. Must agree with nu_prefactor * polar_moment_integral.
double angular_second_moment(double alpha);

/// Levy exponent of rho: Psi(u) = int (1 - cos(u phi)) pi~(phi) dphi.
double characteristic_exponent(double alpha, double u);

struct ConstantsTable {
  double alpha = 0.0;
  double C_nu = 0.0;
  double K = 0.0;
  double I = 0.0;
  double k = 0.0;        // variance rate of rho
  double r = 0.0;        // variance rate of theta_{exp(c t)} / sqrt(c)
  double L_tilde = 0.0;  // lim phi^{1+alpha} pi~(phi)
};

/// Requires alpha in (0, 2 - 1e-6]; closer to 2 throws PrecisionError.
ConstantsTable compute_constants(double alpha);

/// L(x) = 2 pi~((x, inf)), U(x) = 2 int_0^x y L(y) dy, h(y) = U(y) / y^2.
class TruncatedVariance {
 public:
  explicit TruncatedVariance(double alpha);

  [[nodiscard]] double L(double x) const;
  [[nodiscard]] double U(double x) const;
  [[nodiscard]] double h(double y) const;
  [[nodiscard]] double alpha() const { return alpha_; }

 private:
  double alpha_;
};

TruncatedVariance truncated_variance(double alpha);

/// Tabulated angular Levy measure for simulating rho: compound Poisson jumps
/// above a cutoff plus a Gaussian stand-in for the jumps below it.
class AngularLevyModel {
 public:
  static constexpr std::size_t kDefaultTableSize = 10000;

  /// `epsilon` is the default cutoff; the table covers [table_floor, pi]
  /// (table_floor defaults to epsilon), so any cutoff >= table_floor can be
  /// used afterwards.
  AngularLevyModel(double alpha, double epsilon, double table_floor = 0.0,
                   std::size_t table_size = kDefaultTableSize);

  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double epsilon() const { return epsilon_; }
  [[nodiscard]] double table_floor() const { return nodes_.front(); }

  /// Total rate of jumps with |phi| > cutoff.
  [[nodiscard]] double jump_intensity(double cutoff) const;
  /// int_{|phi| <= cutoff} phi^2 pi~(phi) dphi.
  [[nodiscard]] double small_jump_variance(double cutoff) const;
  /// |jump| conditioned on |jump| > cutoff, by inverse CDF on the table.
  double sample_jump_magnitude(double cutoff, RandomStream& rng) const;

  /// rho_{t + duration} - rho_t.
  double increment(double duration, double cutoff, RandomStream& rng) const;

  /// rho on the grid 0, horizon/steps, ..., horizon (steps + 1 values).
  std::vector<double> simulate(double horizon, std::size_t steps, RandomStream& rng) const;

  /// rho at increasing times; each increment uses the cutoff
  /// relative_cutoff * duration^{1/alpha}, clamped to the table floor.
  std::vector<double> simulate_at(std::span<const double> times, double relative_cutoff,
                                  RandomStream& rng) const;

 private:
  double alpha_;
  double epsilon_;
  std::vector<double> nodes_;        // ascending, nodes_.back() == pi
  std::vector<double> tail_;         // int_{node}^{pi} pi~, one-sided
  std::vector<double> second_;       // int_0^{node} phi^2 pi~, one-sided
  struct Interpolants;
  std::shared_ptr<const Interpolants> interp_;
};

/// rho on a uniform grid over [0, horizon] with jump cutoff epsilon.
std::vector<double> simulate_rho(double alpha, double horizon, double epsilon, RandomStream& rng,
                                 std::size_t steps = 1);

}  // namespace windings
