#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxsmooth/estimator.hpp"
#include "proxsmooth/problems.hpp"
#include "proxsmooth/quadrature.hpp"

namespace proxsmooth {

enum class Method { monte_carlo, quadrature };

// Which closed-form error envelope a sweep is compared against:
//   prox_sqrt    sqrt(n * delta / mu)        weakly convex objectives
//   prox_linear  (n * L / mu^2) * delta      objectives with L-Lipschitz Hessians
//   proj_sqrt    sqrt(n * delta)             convex sets of any boundary regularity
//   proj_linear  (none; the linear projection rate is checked by slope only)
enum class BoundKind { prox_sqrt, prox_linear, proj_sqrt, proj_linear, none };

const char* to_string(Method method);
const char* to_string(BoundKind kind);
Method method_from_string(const std::string& token);  // throws ParameterError

// One grid point of a delta sweep. `spread` is the norm of the per-coordinate
// standard error (Monte Carlo) or the grid-refinement error estimate
// (quadrature); it feeds the noise allowance in bound checks and the
// reliability gates in fits. Failed points carry a short status tag and NaN
// numbers instead of aborting the sweep.
struct SweepPoint {
  double delta = kNaN;
  Vec estimate;
  double err = kNaN;         // |estimate - exact target|, NaN without an oracle
  double spread = kNaN;
  double bound = kNaN;       // envelope value at this delta, NaN for `none`
  double ess = kNaN;         // effective sample size (MC only)
  double acceptance = kNaN;  // rejection acceptance rate (MC set instances)
  std::string status = "ok";
  std::uint64_t seed = 0;    // base seed; point i uses the derived stream i
};

struct RateSweep {
  std::string instance_id;
  int n = 0;
  double lambda = kNaN;
  double mu = kNaN;
  Method method = Method::quadrature;
  BoundKind bound_kind = BoundKind::none;
  std::vector<SweepPoint> points;  // strictly decreasing delta, grid order
};

struct SweepConfig {
  Method method = Method::quadrature;
  std::int64_t samples = 100000;       // MC sample / acceptance target per point
  std::uint64_t seed = 0;
  int jobs = 1;                        // worker threads; never affects results
  std::int64_t max_total_samples = 0;  // rejection draw cap, 0 = estimator default
  QuadratureConfig quadrature;
  std::optional<BoundKind> bound_kind;  // default: instance-derived (see below)
};

// Log-evenly spaced grid from delta_max down to delta_min inclusive,
// strictly decreasing. points >= 2; the canonical sweep grids use ratio
// 1/sqrt(10), i.e. two points per decade.
std::vector<double> geometric_grid(double delta_max, double delta_min, int points);

// Sets get proj_sqrt; objectives with a finite Hessian-Lipschitz constant get
// prox_linear; everything else prox_sqrt.
BoundKind default_bound_kind(const ProxInstance& instance);

// Envelope value at one delta. proj_linear and `none` have no closed constant
// and throw ParameterError.
double bound_value(const ProxInstance& instance, BoundKind kind, double delta);

// Runs one estimate per grid point against the instance's exact target.
// Points are independent tasks (MC point i draws from the stream derived with
// task index i) and may run on `jobs` threads; assembly is always in grid
// order, so results are bit-identical for every jobs value. Per-point
// estimator and quadrature failures are recorded in `status`; malformed
// arguments throw ParameterError.
RateSweep run_sweep(const ProxInstance& instance, const std::vector<double>& deltas,
                    const SweepConfig& config);

struct RateFit {
  double slope = kNaN;      // d log err / d log delta
  double intercept = kNaN;  // log-space intercept: err ~ exp(intercept) * delta^slope
  double r_squared = kNaN;
  std::vector<int> window;  // indices of the points the fit used, grid order
};

// Least squares on (log delta, log err) over the usable window. The default
// window drops the largest decade (delta > delta_max/10) so drift terms do
// not tilt the slope, and an explicit inclusive index range can override it.
// Monte Carlo points are reliable only when spread <= 10% of err; failed
// points never enter. Fewer than 3 usable points or a zero error inside the
// window throws DegenerateFitError.
RateFit fit_loglog(const RateSweep& sweep,
                   std::optional<std::pair<int, int>> window = std::nullopt);

// Same fit on raw (delta, err) arrays, every point used. The fit is exact on
// exact power laws: errors 3*delta^0.5 give slope 0.5 and R^2 = 1.
RateFit fit_loglog(const std::vector<double>& deltas, const std::vector<double>& errors);

struct BoundCheckEntry {
  double delta = kNaN;
  double err = kNaN;
  double bound = kNaN;
  double allowed = kNaN;  // bound*(1+slack) + noise allowance
  double margin = kNaN;   // allowed - err; negative = violation
  bool pass = false;
  std::string status = "ok";
};

struct BoundCheck {
  bool pass = false;         // every point ok and within its allowance
  double worst_margin = kNaN;
  std::vector<BoundCheckEntry> entries;
};

// err <= bound*(1+slack) + k*spread at every grid point, with k = 4 for Monte
// Carlo standard errors and k = 10 for quadrature error estimates. Failed
// sweep points fail the check.
BoundCheck check_bound(const RateSweep& sweep, double slack = 0.0);

struct SharpnessEstimate {
  double at_smallest = kNaN;   // err/delta^exponent at the smallest reliable delta
  double richardson = kNaN;    // three-point extrapolation of the same ratio
  double spread_at_smallest = kNaN;  // propagated noise on at_smallest
  double smallest_delta = kNaN;
  bool widened = false;        // noisy tail: spread > 20% of err among the points used
};

// Estimates lim err/delta^exponent two ways: directly at the smallest usable
// grid point, and by fitting v(delta) = A + B*sqrt(delta) + C*delta through
// the last three usable points (v = err/delta^exponent) and reporting A.
// Usable = succeeded with a positive error; noisy Monte Carlo tails stay in
// but raise `widened` when spread > 20% of the error. Fewer than 3 usable
// points throws DegenerateFitError.
SharpnessEstimate sharpness_constant(const RateSweep& sweep, double exponent);

struct ConcentrationEntry {
  double radius = kNaN;
  double observed = kNaN;  // tail mass, or ball mass for the eta rows
  double limit = kNaN;     // tail envelope, or 1 - eta floor
  double stderr_ = kNaN;
  bool pass = false;
};

struct ConcentrationReport {
  bool pass = false;
  double second_moment = kNaN;  // E |Y - prox|^2 estimate
  double second_moment_limit = kNaN;       // n*delta/mu
  double second_moment_stderr = kNaN;
  bool second_moment_pass = false;
  std::vector<ConcentrationEntry> tails;      // P(|Y-prox| >= r) vs min(1, n*delta/(mu r^2))
  std::vector<ConcentrationEntry> ball_mass;  // P(|Y-prox| <= r_eta) vs 1 - eta
};

// Checks how tightly the smoothing measure localizes around the exact
// proximal point: second moment <= n*delta/mu within 5 relative standard
// errors, each tail <= min(1, n*delta/(mu r^2)) + 4 stderr, and the mass of
// the ball of radius sqrt(n*delta/(mu*eta)) >= 1 - eta - 4 stderr for each
// requested eta. The instance must have an exact target.
ConcentrationReport concentration_check(const ProxInstance& instance,
                                        const EstimatorConfig& config,
                                        const std::vector<double>& tail_radii,
                                        const std::vector<double>& etas);

}  // namespace proxsmooth
