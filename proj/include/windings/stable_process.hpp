#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "windings/rng.hpp"
#include "windings/samplers.hpp"

namespace windings {

using ComplexPoint = std::complex<double>;

/// Discretization control for generate_path.
struct PathConfig {
  double horizon = 1.0;
  double base_step = 1e-2;
  /// Target bound on the per-step winding increment around each center.
  double angle_cap = std::numbers::pi / 8.0;
  double min_step = 1e-300;
  std::size_t max_points = 10'000'000;
  /// Points the step rule keeps clear of (winding centers).
  std::vector<ComplexPoint> centers{ComplexPoint{0.0, 0.0}};
  ComplexPoint start{1.0, 0.0};
  /// Times the path must pass through exactly (in addition to 0 and horizon).
  std::vector<double> checkpoints;
  /// If positive, steps are also capped at this fraction of the gap between
  /// consecutive checkpoints (resolves dyadic time grids).
  double relative_step = 0.0;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Sampled trajectory. winding_increments are the principal arguments of
/// (z_{k+1} - c) / (z_k - c) for the first center c of the generating
/// config (the origin by default); clock_increments are trapezoid pieces of
/// int |Z|^{-alpha} ds.
struct PlanarPath {
  std::vector<double> times;
  std::vector<ComplexPoint> points;
  std::vector<double> winding_increments;
  std::vector<double> clock_increments;
  double alpha = 1.0;
  ComplexPoint center{0.0, 0.0};
  std::size_t resampled_steps = 0;

  [[nodiscard]] std::size_t size() const { return times.size(); }
  [[nodiscard]] double horizon() const { return times.back(); }

  /// Builds a path from given nodes (synthetic paths, tests). Increments are
  /// computed from the points around `center`.
  static PlanarPath from_points(std::vector<double> times, std::vector<ComplexPoint> points,
                                double alpha, ComplexPoint center = {0.0, 0.0});
};

/// Thrown when the point budget runs out; carries the generated prefix.
class PathBudgetExceeded : public std::runtime_error {
 public:
  explicit PathBudgetExceeded(PlanarPath prefix);
  [[nodiscard]] const PlanarPath& prefix() const { return prefix_; }

 private:
  PlanarPath prefix_;
};

/// Center lies on the path, so the winding around it is undefined.
struct DegenerateGeometry : std::domain_error {
  using std::domain_error::domain_error;
};

/// State after an accepted step. theta is the winding around the first
/// center of the config, clock the running H.
struct StepState {
  double t = 0.0;
  double dt = 0.0;
  ComplexPoint z;
  ComplexPoint z_prev;
  double winding_increment = 0.0;
  double theta = 0.0;
  double clock_increment = 0.0;
  double clock = 0.0;
  std::size_t steps = 0;
};

/// Called after every accepted step; returning true ends the path there.
using StepObserver = std::function<bool(const StepState&)>;

struct PathEnd {
  StepState state;
  bool stopped = false;    // the observer ended the path
  bool exhausted = false;  // max_points steps taken before the horizon
  std::size_t resampled_steps = 0;
};

/// Planar isotropic stable path Z with E exp(i<l, Z_t - Z_0>) = exp(-t |l|^alpha),
/// built as a planar Brownian motion run with twice a stable(alpha/2)
/// subordinator. alpha == 2 gives standard planar Brownian motion (per
/// coordinate variance t).
PlanarPath generate_path(const StableIndex& alpha, const PathConfig& config, RandomStream& rng,
                         const StepObserver& stop = {});

/// Same dynamics as generate_path without storing nodes: the observer sees
/// every step. Budget exhaustion is reported in the result, not thrown.
PathEnd run_path(const StableIndex& alpha, const PathConfig& config, RandomStream& rng,
                 const StepObserver& observer);

/// Cumulative winding around each center, one series per center, aligned
/// with path.times (theta(0) = 0).
std::vector<std::vector<double>> winding_series(const PlanarPath& path,
                                                std::span<const ComplexPoint> centers);
/// Winding around the path's own center, from the stored increments.
std::vector<double> winding_series(const PlanarPath& path);

/// H(t_k) = int_0^{t_k} |Z_s|^{-alpha} ds (trapezoid on the nodes).
std::vector<double> clock_series(const PlanarPath& path);

/// A(u) = inf{t : H(t) > u}, linear between nodes. Throws std::range_error
/// for u outside [0, H(horizon)].
double inverse_clock(std::span<const double> times, std::span<const double> clock, double u);

/// Linear interpolation of a series on the path grid.
double value_at(std::span<const double> times, std::span<const double> series, double t);

enum class ConeMode { one_sided, symmetric, two_sided };

struct ConeSpec {
  ConeMode mode = ConeMode::symmetric;
  double upper = 1.0;  // c
  double lower = 1.0;  // d, two-sided only
};

struct ExitTimeRecord {
  double time = 0.0;        // interpolated inside the crossing step
  double grid_time = 0.0;   // first node outside the cone
  bool censored = false;    // horizon reached inside the cone
  double crossing_value = 0.0;  // the level that was crossed (+-c or -d)
};

ExitTimeRecord exit_time(std::span<const double> times, std::span<const double> theta,
                         const ConeSpec& cone);

/// rho_u = theta(A(u)) on the given u grid.
std::vector<double> rho_series(const PlanarPath& path, std::span<const double> u_grid);

/// Relative deviation between A(u) and int_0^u exp(alpha xi_s) ds with
/// xi_s = log|Z_{A(s)}|, both by trapezoid, on a uniform grid of `cells`
/// cells over [0, H(horizon)].
double skew_product_error(const PlanarPath& path, std::size_t cells);

/// Greedy subsequence of the nodes of `fine` obeying the step rule of
/// `config` (typically the fine path's own config with twice the angle cap):
/// from each kept node, keep the furthest node within the allowed step.
/// The first and last nodes are always kept.
PlanarPath coarsen(const PlanarPath& fine, const PathConfig& config);

/// Number of multiples of 2 pi by which the winding of the coarse path
/// differs from the fine one at the horizon; nonzero means the coarse grid
/// missed loops.
long missed_loops(const PlanarPath& fine, const PlanarPath& coarse);

/// CSV with header t,re,im,theta,H.
void write_path_csv(std::ostream& out, const PlanarPath& path);

}  // namespace windings
