#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "proxsmooth/problems.hpp"

namespace proxsmooth {

// One row of the acceptance table. `observed` and `target` are preformatted
// strings so reports are byte-stable; `margin` is the normalized headroom to
// the gate (1 = far inside, 0 = exactly on it, negative = violation,
// clamped below at -9.999).
struct CheckRow {
  std::string criterion;
  std::string check;
  std::string observed;
  std::string target;
  double margin = 0.0;
  bool pass = false;
};

struct CriterionReport {
  std::string name;
  std::vector<CheckRow> rows;
  bool pass = false;
  double worst_margin = 0.0;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CriterionReport> criteria;
  bool pass = false;
};

// The acceptance criteria, in canonical order:
//   quadratic-exactness    quadrature reproduces the closed-form prox of
//                          quadratics to 1e-8 across (A, n, lambda, delta)
//   hinge-sqrt-rate        hinge sweeps n=1..3: error <= sqrt(n delta), slope
//                          1/2, and the sqrt(2n/pi) sharpness constant
//   hinge-sharp-constant   |error|/sqrt(delta) -> sqrt(2/pi): within 2% at
//                          delta=1e-4, Richardson within 0.5%
//   cone-sharp-constant    cone apex estimate over sqrt(delta) within
//                          3 stderr of chi_mean(2)*cap_mean(pi/4,2), N=1e6
//   localization           second moment <= n delta/mu, tail and ball-mass
//                          envelopes at delta=1e-2
//   smooth-linear-rate     log-cosh sweep: error <= (nL/mu^2) delta, slope 1
//   covariance-trace       weighted covariance trace <= n delta/mu on every
//                          catalog instance at delta in {0.1, 0.01}
//   projection-sqrt-rate   half-space and ball sweeps: error <= sqrt(2 delta)
//   halfspace-projection   closed form at delta=0.04 vs the erfc oracle, MC
//                          agreement within 4 stderr, slope 1 +- 0.05
//   ball-linear-slope      exterior-anchor ball sweep slope in [0.9, 1.1]
//   tail-bounds            Gaussian tail sandwich and the radial boundary
//                          envelope hold across their parameter grids
//   properties             translation equivariance, weight-shift and batch
//                          bit-invariance, nonexpansiveness, brute-force
//                          agreement; zero failures over fixed seeds
std::vector<std::string> criterion_names();

// Runs one criterion. `jobs` caps sweep worker threads and never changes any
// reported byte. Unknown names throw ParameterError.
CriterionReport run_criterion(const std::string& name, std::uint64_t seed,
                              int jobs = 1);

// Suites group the criteria:
//   all          every criterion
//   prox-sqrt    hinge-sqrt-rate, localization
//   prox-linear  smooth-linear-rate, covariance-trace
//   proj-sqrt    projection-sqrt-rate
//   proj-linear  ball-linear-slope
//   examples     quadratic-exactness, hinge-sharp-constant,
//                cone-sharp-constant, halfspace-projection
//   tail-bounds  tail-bounds
//   properties   properties
std::vector<std::string> suite_names();
std::vector<std::string> suite_criteria(const std::string& suite);

VerifyReport run_suite(const std::string& suite, std::uint64_t seed, int jobs = 1);

// Fixed-width table plus a one-line summary; identical inputs produce
// identical bytes.
std::string format_report(const VerifyReport& report);

}  // namespace proxsmooth
