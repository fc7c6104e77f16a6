#pragma once

namespace proxsmooth::specfun {

// Standard normal density (2*pi)^{-1/2} exp(-t^2/2).
double normal_pdf(double t);

// Standard normal distribution function, evaluated through erfc so the lower
// tail keeps full relative accuracy down to ~1e-300.
double normal_cdf(double t);

// log Phi(t); usable far into the lower tail (t = -1e4 is fine) where
// normal_cdf underflows. Upper tail uses log1p on -Phi(-t).
double normal_logcdf(double t);

// Hazard ratio normal_pdf(t)/normal_cdf(-t). Continued-fraction evaluation
// past the erfc underflow point; hazard(t) ~ t + 1/t for large t.
double normal_hazard(double t);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// E ||Z||, Z ~ N(0, I_n): sqrt(2) Gamma((n+1)/2) / Gamma(n/2).
double chi_mean(unsigned n);

// E[U_1 | U_1 >= cos(alpha)] for U uniform on the unit sphere S^{n-1},
// n >= 2, 0 < alpha <= pi. Equals
//   int_{cos a}^1 t (1-t^2)^{(n-3)/2} dt / int_{cos a}^1 (1-t^2)^{(n-3)/2} dt;
// evaluated as sin^{n-1}(a)/(n-1) over int_0^a sin^{n-2}, which is the same
// ratio with the endpoint singularity substituted away, by adaptive
// Gauss-Legendre doubling to 1e-12 relative agreement.
double cap_mean(double alpha, unsigned n);

// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_surface(unsigned n);

// One-sided Gaussian tail integral int_y^inf e^{-t^2/(2 delta)} dt together
// with its elementary sandwich
//   delta*y/(y^2+delta) e^{-y^2/(2 delta)} <= integral <= delta/y e^{-y^2/(2 delta)}.
// The log fields stay finite when the plain values underflow, so orderings
// can always be checked in log space.
struct TailBoundReport {
  double y = 0.0;
  double delta = 0.0;
  double integral = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double log_integral = 0.0;
  double log_lower = 0.0;
  double log_upper = 0.0;
};
TailBoundReport gaussian_tail_bounds(double y, double delta);

// Radial Gaussian tail moment over the exterior of the ball of radius R:
//   surface(n) * int_R^inf (r + shift)^k r^{n-1} e^{-r^2/(2 delta)} dr,
// evaluated with the e^{-R^2/(2 delta)} factor pulled out so log_value stays
// finite when value underflows.
struct RadialTailValue {
  double value = 0.0;
  double log_value = 0.0;
};
RadialTailValue gaussian_radial_tail(unsigned n, double radius, double shift,
                                     unsigned k, double delta);

// Closed-form envelope (4 pi^{n/2} / Gamma(n/2)) (R+shift)^k R^{n-2} delta
// e^{-R^2/(2 delta)}, which dominates gaussian_radial_tail whenever
// delta <= R^2/(2n).
RadialTailValue gaussian_radial_tail_envelope(unsigned n, double radius,
                                              double shift, unsigned k,
                                              double delta);

}  // namespace proxsmooth::specfun
