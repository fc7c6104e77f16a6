#pragma once

#include <cstdint>
#include <optional>

#include "proxsmooth/problems.hpp"

namespace proxsmooth {

// Deterministic evaluation of the barycentric ratios by composite
// Gauss-Legendre quadrature.  Supported layouts (dimension <= 3):
//   * smooth objectives and objectives with axis-aligned kinks:
//     tensor-product grid over a box around the proximal point, with
//     panel ladders that resolve the delta-scale structure at kinks;
//   * half-space sets: closed form via the normal hazard function
//     (a tensor grid restricted to the half-space can be forced for
//     cross-checking, feasible while signed_distance/sqrt(delta) stays
//     moderate);
//   * balls (n in {1,2,3}): the angular integral is taken in closed
//     form, leaving one radial panel integral;
//   * circular cones (n in {2,3}) with the anchor on the symmetry
//     axis: polar (radius, polar-angle) tensor grid.
//
// All engines shift the exponent by the running minimum of the grid
// values, so ratios remain well conditioned even when the absolute
// Gaussian mass of the region underflows doubles.
struct QuadratureConfig {
  // Gauss-Legendre points per panel is points_per_axis / 8; refinement
  // doubles it until two successive ratio vectors agree.
  int points_per_axis = 64;  // >= 32 and even
  int refinement_limit = 6;  // >= 1 extra doublings allowed
  double target_rel_tol = 1e-10;  // >= 1e-14, relative to max(|value|, sqrt(n delta lambda))
  // Optional explicit box; when unset the box from choose_box is used.
  std::optional<Vec> box_center;
  double box_radius = 0.0;  // > 0 when box_center is set
  // Integrate half-spaces on a grid instead of using the closed form.
  bool force_grid = false;

  void validate(int dim) const;
};

struct QuadratureResult {
  Vec point;                  // estimate of m_delta(x) or p_delta(x)
  double error_estimate = 0;  // |last - previous refinement| (0 for closed forms)
  // log of E[exp(-f(Y)/delta)] under Y ~ N(x, delta*lambda*I); for sets
  // this is the log of the Gaussian mass of the set.
  double log_normalizer = 0;
  int refinements = 0;             // doublings actually performed
  std::int64_t evaluations = 0;    // objective/indicator evaluations
};

// Box used by the tensor-product engine: centered at the proximal point
// (exact target when available, 1-d brute force otherwise) with radius
// max(|x - center|, 1) + 12*sqrt(n*delta/mu).
std::pair<Vec, double> choose_box(const ProxInstance& instance, double delta);

// Proximal-point estimate for objective instances; set instances are
// routed to the projection engines (lambda must be 1 for sets).
QuadratureResult mdelta_quadrature(const ProxInstance& instance, double delta,
                                   const QuadratureConfig& config = {});

// Smoothed-projection estimate; requires a set instance.
QuadratureResult pdelta_quadrature(const ProxInstance& instance, double delta,
                                   const QuadratureConfig& config = {});

}  // namespace proxsmooth
