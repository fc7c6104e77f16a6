#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "proxsmooth/errors.hpp"
#include "proxsmooth/specfun.hpp"

using namespace proxsmooth;
using namespace proxsmooth::specfun;

namespace {
bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("normal pdf and cdf reference values") {
  // reference values computed with 40-digit arithmetic
  CHECK(close(normal_pdf(0.0), 0.39894228040143267794, 1e-15));
  CHECK(close(normal_pdf(1.0), 0.24197072451914336583, 1e-14));
  CHECK(close(normal_cdf(0.0), 0.5, 1e-15));
  CHECK(close(normal_cdf(-1.0), 0.15865525393145705141, 1e-14));
  CHECK(close(normal_cdf(-5.0), 2.8665157187919391167e-7, 1e-13));
  CHECK(close(normal_cdf(1.0), 1.0 - 0.15865525393145705141, 1e-14));
}

TEST_CASE("cdf differentiates to pdf") {
  const double h = 1e-6;
  for (double t : {-3.0, -1.0, -0.3, 0.0, 0.7, 2.5}) {
    const double fd = (normal_cdf(t + h) - normal_cdf(t - h)) / (2.0 * h);
    CHECK(std::abs(fd - normal_pdf(t)) < 1e-8);
  }
}

TEST_CASE("log cdf matches cdf where representable and extends past underflow") {
  for (double t : {-8.0, -5.0, -2.0, 0.0, 1.0, 3.0}) {
    CHECK(close(normal_logcdf(t), std::log(normal_cdf(t)), 1e-12));
  }
  CHECK(close(normal_logcdf(-10.0), -53.231285150512470632, 1e-13));
  CHECK(close(normal_logcdf(-26.0), -342.17850892992783236, 1e-13));
  CHECK(close(normal_logcdf(-40.0), -804.60844201375378750, 1e-13));
  CHECK(close(normal_logcdf(-100.0), -5005.5242086942050892, 1e-13));
  CHECK(std::isfinite(normal_logcdf(-1e4)));
}

TEST_CASE("hazard ratio across the erfc underflow boundary") {
  CHECK(close(normal_hazard(0.5), 1.1410777703680644764, 1e-13));
  CHECK(close(normal_hazard(1.0), 1.5251352761609812091, 1e-13));
  CHECK(close(normal_hazard(3.0), 3.2830986549304365104, 1e-13));
  CHECK(close(normal_hazard(6.0), 6.1584826045445989210, 1e-13));
  CHECK(close(normal_hazard(8.0), 8.1213681122361126797, 1e-13));
  CHECK(close(normal_hazard(20.0), 20.049753068527850526, 1e-13));
  CHECK(close(normal_hazard(30.0), 30.033259667433676970, 1e-13));
  CHECK(close(normal_hazard(100.0), 100.00999800099926072, 1e-13));
  CHECK(close(normal_hazard(1000.0), 1000.0009999980000056, 1e-13));
}

TEST_CASE("log gamma reference values") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == 0.0);
  CHECK(close(log_gamma(0.5), 0.57236494292470008707, 1e-13));
  CHECK(close(log_gamma(5.0), 3.1780538303479456197, 1e-13));
  CHECK(close(log_gamma(99.5), 356.83538282361307368, 1e-13));
  CHECK_THROWS_AS(log_gamma(0.0), ParameterError);
  CHECK_THROWS_AS(log_gamma(-1.0), ParameterError);
}

TEST_CASE("chi mean closed forms and large-n limit") {
  CHECK(close(chi_mean(1), 0.79788456080286535588, 1e-13));
  CHECK(close(chi_mean(2), 1.2533141373155002512, 1e-13));
  CHECK(close(chi_mean(3), 1.5957691216057307118, 1e-13));
  // E chi_n / sqrt(n) -> 1
  // large-argument lgamma differences cancel ~5 digits, hence the wider bar
  CHECK(close(chi_mean(10000) / 100.0, 0.99997500031253906147, 1e-11));
}

TEST_CASE("cap mean reference values and range") {
  CHECK(close(cap_mean(M_PI / 3.0, 3), 0.75, 1e-12));
  CHECK(close(cap_mean(M_PI / 4.0, 2), 0.90031631615710606956, 1e-11));
  CHECK(close(cap_mean(M_PI / 4.0, 3), 0.85355339059327376220, 1e-11));
  CHECK(close(cap_mean(M_PI / 4.0, 4), 0.82587167902434795518, 1e-11));
  // alpha -> 0 concentrates the cap at the pole
  CHECK(std::abs(cap_mean(1e-4, 2) - 1.0) < 1e-6);
  for (unsigned n : {2u, 3u, 5u}) {
    for (double a : {0.3, M_PI / 4.0, 1.2, 2.7}) {
      const double v = cap_mean(a, n);
      CHECK(v <= 1.0);
      CHECK(v >= std::cos(a) - 1e-12);
    }
  }
}

TEST_CASE("cap mean against the direct t-integral oracle") {
  // independent oracle: Simpson on the defining ratio for n with no endpoint
  // singularity ((n-3)/2 >= 0)
  auto oracle = [](double alpha, unsigned n) {
    const double lo = std::cos(alpha);
    const int m = 200000;
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= m; ++i) {
      const double t = lo + (1.0 - lo) * i / m;
      const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double f = std::pow(1.0 - t * t, 0.5 * (static_cast<double>(n) - 3.0));
      num += w * t * f;
      den += w * f;
    }
    return num / den;
  };
  CHECK(close(cap_mean(M_PI / 4.0, 3), oracle(M_PI / 4.0, 3), 1e-9));
  CHECK(close(cap_mean(1.1, 5), oracle(1.1, 5), 1e-9));
}

TEST_CASE("gaussian tail sandwich at moderate arguments") {
  const auto rep = gaussian_tail_bounds(1.0, 1.0);
  CHECK(close(rep.integral, 0.39768974542335144803, 1e-13));
  CHECK(close(rep.lower, 0.30326532985631671180, 1e-13));
  CHECK(close(rep.upper, 0.60653065971263342360, 1e-13));
  CHECK(rep.lower <= rep.integral);
  CHECK(rep.integral <= rep.upper);
}

TEST_CASE("gaussian tail sandwich holds in log space across the grid") {
  // log-spaced y in [1e-2, 10], delta in [1e-4, 10]; deep-underflow corners
  // (exponent ~ -5e5) must stay ordered via the log fields
  for (int iy = 0; iy <= 12; ++iy) {
    const double y = 1e-2 * std::pow(1e3, iy / 12.0);
    for (int id = 0; id <= 12; ++id) {
      const double delta = 1e-4 * std::pow(1e5, id / 12.0);
      const auto rep = gaussian_tail_bounds(y, delta);
      CHECK(std::isfinite(rep.log_lower));
      CHECK(std::isfinite(rep.log_integral));
      CHECK(std::isfinite(rep.log_upper));
      // slack scales with magnitude: y^2/(2 delta) reaches ~5e5 where one ulp
      // of the exponent already exceeds an absolute 1e-12
      const double slack =
          1e-12 * std::max(1.0, std::abs(rep.log_integral));
      CHECK(rep.log_lower <= rep.log_integral + slack);
      CHECK(rep.log_integral <= rep.log_upper + slack);
      CHECK(rep.integral >= 0.0);
      CHECK(rep.lower >= 0.0);
      CHECK(rep.upper >= 0.0);
    }
  }
  CHECK_THROWS_AS(gaussian_tail_bounds(-1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(gaussian_tail_bounds(1.0, 0.0), ParameterError);
}

TEST_CASE("radial tail moment reference values") {
  // frozen from 40-digit radial integrals
  CHECK(close(gaussian_radial_tail(2, 1.0, 1.0, 1, 0.2).value,
              0.22415533396213570, 1e-9));
  CHECK(close(gaussian_radial_tail(1, 1.0, 0.0, 0, 0.3).value,
              0.093207522377344227, 1e-9));
  CHECK(close(gaussian_radial_tail(3, 1.5, 1.0, 1, 0.25).value,
              0.15363984499767813, 1e-9));
}

TEST_CASE("radial tail envelope dominates for delta <= R^2/(2n)") {
  for (unsigned n : {1u, 2u, 3u}) {
    for (unsigned k : {0u, 1u}) {
      for (double R : {0.5, 1.0, 2.0}) {
        for (double shift : {0.0, 1.0}) {
          for (double frac : {1.0, 0.25, 0.05}) {
            const double delta = frac * R * R / (2.0 * n);
            const auto val = gaussian_radial_tail(n, R, shift, k, delta);
            const auto env = gaussian_radial_tail_envelope(n, R, shift, k, delta);
            CHECK(val.log_value <= env.log_value + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("sphere surface closed forms") {
  CHECK(close(sphere_surface(1), 2.0, 1e-14));
  CHECK(close(sphere_surface(2), 2.0 * M_PI, 1e-14));
  CHECK(close(sphere_surface(3), 4.0 * M_PI, 1e-14));
}

TEST_CASE("non-finite inputs are rejected") {
  CHECK_THROWS_AS(normal_pdf(std::nan("")), ParameterError);
  CHECK_THROWS_AS(normal_cdf(std::numeric_limits<double>::infinity()), ParameterError);
  CHECK_THROWS_AS(cap_mean(0.0, 3), ParameterError);
  CHECK_THROWS_AS(cap_mean(0.5, 1), ParameterError);
}
