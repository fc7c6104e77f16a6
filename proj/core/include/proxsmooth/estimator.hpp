#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "proxsmooth/problems.hpp"

namespace proxsmooth {

struct EstimatorConfig {
  double delta = 0.1;
  std::int64_t samples = 100000;  // importance-sample count / acceptance target
  std::uint64_t seed = 0;
  std::uint64_t task = 0;         // stream index; sweeps use one per grid point
  std::int64_t batch_size = 0;    // 0 = one batch; chunking never alters results
  std::int64_t max_total_samples = 0;  // rejection draw cap; 0 = 50 * samples
  std::optional<Vec> moment_ref;  // center for the second-moment diagnostic

  std::int64_t resolved_batch() const { return batch_size > 0 ? batch_size : samples; }
  std::int64_t resolved_cap() const {
    return max_total_samples > 0 ? max_total_samples : 50 * samples;
  }
  void validate(int dim) const;  // throws ParameterError
};

struct Estimate {
  Vec point;
  Vec stderr_;                 // per-coordinate, self-normalized delta method
  double ess = 0.0;            // (sum w)^2 / sum w^2; accepted count in rejection
  double acceptance = kNaN;    // rejection mode only
  double log_normalizer = 0.0; // log mean weight, shift-corrected
  double second_moment = kNaN;        // weighted mean |Y - moment_ref|^2
  double second_moment_stderr = kNaN;
  double cov_trace = kNaN;            // weighted trace of the sample covariance
  double cov_trace_stderr = kNaN;
  std::int64_t drawn = 0;
};

// Monte Carlo m_delta(x): proposal N(x, delta*lambda*I), self-normalized
// weights exp(-f/delta). Set instances route to rejection sampling.
Estimate estimate_mdelta(const ProxInstance& instance, const EstimatorConfig& config);

// Rejection-sampled p_delta(x): draw N(x, delta*I), keep members of C until
// `samples` acceptances or the draw cap; error if fewer than 2 acceptances.
Estimate estimate_pdelta(const ProxInstance& instance, const EstimatorConfig& config);

struct TailMass {
  double radius;
  double mass;     // weighted fraction with |Y - center| >= radius
  double stderr_;
};

std::vector<TailMass> tail_probability(const ProxInstance& instance,
                                       const EstimatorConfig& config, const Vec& center,
                                       const std::vector<double>& radii);

double empirical_cov_trace(const ProxInstance& instance, const EstimatorConfig& config);

}  // namespace proxsmooth
