#pragma once

#include "windings/rng.hpp"

namespace windings {

/// Stable index alpha in (0, 2]. The value 2 is the Brownian case and is
/// only accepted by routines that say so; planar stable routines call
/// require_planar_stable().
class StableIndex {
 public:
  explicit StableIndex(double alpha);

  [[nodiscard]] double value() const { return alpha_; }
  [[nodiscard]] bool is_brownian() const { return alpha_ == 2.0; }

  /// Throws std::domain_error unless 0 < alpha < 2.
  const StableIndex& require_planar_stable() const;

  friend bool operator==(const StableIndex&, const StableIndex&) = default;

 private:
  double alpha_;
};

/// One-sided stable variate with E[exp(-mu X)] = exp(-mu^rho), 0 < rho < 1
/// (Kanter's representation).
double sample_positive_stable(double rho, RandomStream& rng);

/// Symmetric stable variate with E[exp(iuX)] = exp(-|u|^alpha), 0 < alpha <= 2
/// (Chambers-Mallows-Stuck). alpha = 2 gives N(0, 2).
double sample_symmetric_stable(double alpha, RandomStream& rng);

/// Standard Cauchy variate.
double sample_cauchy(RandomStream& rng);

}  // namespace windings
