#include "proxsmooth/specfun.hpp"

#include <cmath>

#include "proxsmooth/errors.hpp"
#include "proxsmooth/gauss_legendre.hpp"

namespace proxsmooth::specfun {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log sqrt(2 pi)

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ParameterError(std::string(what) + " must be finite");
}

// Mills ratio Phi(-t)/pdf(t) via the Laplace continued fraction
// 1/(t + 1/(t + 2/(t + 3/(...)))), accurate to full precision for t >= 8.
double mills_cf(double t) {
  double v = 0.0;
  for (int k = 60; k >= 1; --k) v = k / (t + v);
  return 1.0 / (t + v);
}

}  // namespace

double normal_pdf(double t) {
  require_finite(t, "normal_pdf argument");
  return std::exp(-0.5 * t * t - kLogSqrt2Pi);
}

double normal_cdf(double t) {
  require_finite(t, "normal_cdf argument");
  return 0.5 * std::erfc(-t * M_SQRT1_2);
}

double normal_logcdf(double t) {
  require_finite(t, "normal_logcdf argument");
  if (t >= -8.0) {
    if (t >= 8.0) return std::log1p(-normal_cdf(-t));
    return std::log(normal_cdf(t));
  }
  // log Phi(t) = -t^2/2 - log sqrt(2 pi) + log Mills(-t)
  return -0.5 * t * t - kLogSqrt2Pi + std::log(mills_cf(-t));
}

double normal_hazard(double t) {
  require_finite(t, "normal_hazard argument");
  if (t <= 8.0) return normal_pdf(t) / normal_cdf(-t);
  return 1.0 / mills_cf(t);
}

double log_gamma(double x) {
  require_finite(x, "log_gamma argument");
  if (x <= 0.0) throw ParameterError("log_gamma requires x > 0");
  return std::lgamma(x);
}

double chi_mean(unsigned n) {
  if (n == 0) throw ParameterError("chi_mean requires n >= 1");
  return std::exp(0.5 * std::log(2.0) + log_gamma(0.5 * (n + 1)) - log_gamma(0.5 * n));
}

double sphere_surface(unsigned n) {
  if (n == 0) throw ParameterError("sphere_surface requires n >= 1");
  return std::exp(std::log(2.0) + 0.5 * n * std::log(M_PI) - log_gamma(0.5 * n));
}

double cap_mean(double alpha, unsigned n) {
  require_finite(alpha, "cap_mean alpha");
  if (!(alpha > 0.0 && alpha <= M_PI)) throw ParameterError("cap_mean requires alpha in (0, pi]");
  if (n < 2) throw ParameterError("cap_mean requires n >= 2");
  // numerator int_{cos a}^1 t (1-t^2)^{(n-3)/2} dt = sin^{n-1}(a)/(n-1)
  const double num = std::pow(std::sin(alpha), static_cast<double>(n) - 1.0) / (n - 1.0);
  // denominator int_{cos a}^1 (1-t^2)^{(n-3)/2} dt = int_0^a sin^{n-2}(th) dth
  const double ex = static_cast<double>(n) - 2.0;
  const double den = gl::integrate_doubling(
      [ex](double th) { return ex == 0.0 ? 1.0 : std::pow(std::sin(th), ex); }, 0.0,
      alpha, 1e-12);
  return num / den;
}

TailBoundReport gaussian_tail_bounds(double y, double delta) {
  require_finite(y, "gaussian_tail_bounds y");
  require_finite(delta, "gaussian_tail_bounds delta");
  if (!(y > 0.0) || !(delta > 0.0)) {
    throw ParameterError("gaussian_tail_bounds requires y > 0 and delta > 0");
  }
  TailBoundReport rep;
  rep.y = y;
  rep.delta = delta;
  const double s = std::sqrt(delta);
  const double e = -y * y / (2.0 * delta);
  // int_y^inf e^{-t^2/(2 delta)} dt = sqrt(2 pi delta) Phi(-y/sqrt(delta))
  rep.log_integral = 0.5 * std::log(2.0 * M_PI * delta) + normal_logcdf(-y / s);
  rep.log_lower = std::log(delta * y / (y * y + delta)) + e;
  rep.log_upper = std::log(delta / y) + e;
  rep.integral = std::exp(rep.log_integral);
  rep.lower = std::exp(rep.log_lower);
  rep.upper = std::exp(rep.log_upper);
  return rep;
}

RadialTailValue gaussian_radial_tail(unsigned n, double radius, double shift,
                                     unsigned k, double delta) {
  if (n < 1) throw ParameterError("gaussian_radial_tail requires n >= 1");
  require_finite(radius, "gaussian_radial_tail radius");
  require_finite(shift, "gaussian_radial_tail shift");
  require_finite(delta, "gaussian_radial_tail delta");
  if (!(radius > 0.0) || !(delta > 0.0) || shift < 0.0) {
    throw ParameterError("gaussian_radial_tail requires radius, delta > 0 and shift >= 0");
  }
  const double R = radius;
  // shifted integrand over s = r - R with the e^{-R^2/(2 delta)} factor removed;
  // the exponent -(2 R s + s^2)/(2 delta) keeps everything O(1)
  auto h = [&](double s) {
    const double r = R + s;
    return std::pow(r + shift, static_cast<double>(k)) *
           std::pow(r, static_cast<double>(n) - 1.0) *
           std::exp(-(2.0 * R * s + s * s) / (2.0 * delta));
  };
  const double s_max = -R + std::sqrt(R * R + 1000.0 * delta);
  // geometric ladder from the boundary decay scale delta/R
  std::vector<double> bp{0.0};
  for (double s = 0.25 * delta / R; s < s_max; s *= 2.0) bp.push_back(s);
  bp.push_back(s_max);
  double coarse = gl::integrate_panels(h, bp, 12);
  std::vector<double> fine_bp{bp.front()};
  for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
    fine_bp.push_back(0.5 * (bp[j] + bp[j + 1]));
    fine_bp.push_back(bp[j + 1]);
  }
  double fine = gl::integrate_panels(h, fine_bp, 12);
  if (std::abs(fine - coarse) > 1e-10 * std::abs(fine)) {
    throw AccuracyError("radial tail integral did not stabilize");
  }
  RadialTailValue out;
  out.log_value = std::log(sphere_surface(n) * fine) - R * R / (2.0 * delta);
  out.value = std::exp(out.log_value);
  return out;
}

RadialTailValue gaussian_radial_tail_envelope(unsigned n, double radius,
                                              double shift, unsigned k,
                                              double delta) {
  if (n < 1) throw ParameterError("gaussian_radial_tail_envelope requires n >= 1");
  if (!(radius > 0.0) || !(delta > 0.0) || shift < 0.0) {
    throw ParameterError("gaussian_radial_tail_envelope requires radius, delta > 0 and shift >= 0");
  }
  RadialTailValue out;
  out.log_value = std::log(2.0) + std::log(sphere_surface(n)) +
                  k * std::log(radius + shift) +
                  (static_cast<double>(n) - 2.0) * std::log(radius) +
                  std::log(delta) - radius * radius / (2.0 * delta);
  out.value = std::exp(out.log_value);
  return out;
}

}  // namespace proxsmooth::specfun
