#include "proxsmooth/estimator.hpp"

#include <cmath>
#include <string>

#include "proxsmooth/accumulate.hpp"
#include "proxsmooth/errors.hpp"
#include "proxsmooth/rng.hpp"

namespace proxsmooth {

namespace {

// One completed sampling run: per-sample deviations from the anchor (sample
// major), and weights for the importance-sampled case.
struct Run {
  int n = 0;
  std::int64_t count = 0;      // stored samples
  std::int64_t drawn = 0;
  bool weighted = false;
  std::vector<double> dev;     // count * n
  std::vector<double> w;       // count (weighted runs only)
  double fmin = 0.0;           // shift used inside the exponent
  double delta = 0.0;
  double sw = 0.0, sw2 = 0.0;  // weight sums (rejection: count)
};

void check_config(const ProxInstance& instance, const EstimatorConfig& config) {
  instance.validate();
  config.validate(instance.dim());
}

Run run_importance(const ProxInstance& instance, const EstimatorConfig& config) {
  const int n = instance.dim();
  const std::int64_t N = config.samples;
  const double scale = std::sqrt(config.delta * instance.lambda);
  const rng::SampleStream stream = rng::derive_stream(config.seed, config.task);

  Run run;
  run.n = n;
  run.count = N;
  run.drawn = N;
  run.weighted = true;
  run.delta = config.delta;
  run.dev.resize(static_cast<std::size_t>(N) * n);
  run.w.resize(N);  // holds f values first, weights after the shift is known

  Vec y(n);
  double fmin = kInf;
  const std::int64_t batch = config.resolved_batch();
  for (std::int64_t start = 0; start < N; start += batch) {
    const std::int64_t stop = std::min(N, start + batch);
    for (std::int64_t i = start; i < stop; ++i) {
      double* d = run.dev.data() + static_cast<std::size_t>(i) * n;
      stream.gaussians(static_cast<std::uint64_t>(i), {d, static_cast<std::size_t>(n)});
      for (int c = 0; c < n; ++c) {
        d[c] *= scale;
        y[c] = instance.x[c] + d[c];
      }
      const double fv = instance.f(y);
      if (std::isnan(fv) || fv == -kInf) {
        throw EvaluationError("target returned " + std::string(std::isnan(fv) ? "NaN" : "-inf") +
                              " at sample " + std::to_string(i));
      }
      run.w[i] = fv;
      if (fv < fmin) fmin = fv;
    }
  }
  if (fmin == kInf) {
    throw ZeroMassError("all importance weights are zero: every sample left dom f", N, 0);
  }
  run.fmin = fmin;

  Neumaier sw, sw2;
  for (std::int64_t i = 0; i < N; ++i) {
    const double fv = run.w[i];
    const double wi = (fv == kInf) ? 0.0 : std::exp(-(fv - fmin) / config.delta);
    run.w[i] = wi;
    sw.add(wi);
    sw2.add(wi * wi);
  }
  run.sw = sw.value();
  run.sw2 = sw2.value();
  if (!(run.sw > 0.0)) {
    throw ZeroMassError("all importance weights are zero after the shift", N, 0);
  }
  return run;
}

Run run_rejection(const ProxInstance& instance, const EstimatorConfig& config) {
  const int n = instance.dim();
  const std::int64_t N = config.samples;
  const std::int64_t cap = config.resolved_cap();
  const double scale = std::sqrt(config.delta * instance.lambda);
  const rng::SampleStream stream = rng::derive_stream(config.seed, config.task);

  Run run;
  run.n = n;
  run.weighted = false;
  run.delta = config.delta;
  run.dev.reserve(static_cast<std::size_t>(std::min<std::int64_t>(N, 1 << 20)) * n);

  Vec g(n), y(n);
  std::int64_t accepted = 0, i = 0;
  for (; i < cap && accepted < N; ++i) {
    stream.gaussians(static_cast<std::uint64_t>(i), {g.data(), static_cast<std::size_t>(n)});
    for (int c = 0; c < n; ++c) {
      g[c] *= scale;
      y[c] = instance.x[c] + g[c];
    }
    if (instance.member(y)) {
      ++accepted;
      run.dev.insert(run.dev.end(), g.data(), g.data() + n);
    }
  }
  run.drawn = i;
  run.count = accepted;
  if (accepted < 2) {
    throw ZeroMassError("rejection sampler starved: " + std::to_string(accepted) +
                            " acceptances in " + std::to_string(i) +
                            " draws (delta too small at this distance)",
                        i, accepted);
  }
  run.sw = static_cast<double>(accepted);
  run.sw2 = static_cast<double>(accepted);
  return run;
}

Run run_any(const ProxInstance& instance, const EstimatorConfig& config) {
  return instance.is_set ? run_rejection(instance, config) : run_importance(instance, config);
}

double weight_of(const Run& run, std::int64_t i) {
  return run.weighted ? run.w[i] : 1.0;
}

Estimate summarize(const ProxInstance& instance, const EstimatorConfig& config,
                   const Run& run) {
  const int n = run.n;
  const std::int64_t m = run.count;

  // weighted mean deviation
  Vec mean_dev(n);
  for (int c = 0; c < n; ++c) {
    Neumaier acc;
    for (std::int64_t i = 0; i < m; ++i) {
      acc.add(weight_of(run, i) * run.dev[static_cast<std::size_t>(i) * n + c]);
    }
    mean_dev[c] = acc.value() / run.sw;
  }

  Estimate est;
  est.point = instance.x + mean_dev;
  est.drawn = run.drawn;
  est.stderr_ = Vec(n);

  if (run.weighted) {
    // self-normalized ratio estimator: se_c = sqrt(sum w^2 (Y_c - m_c)^2)/sum w
    for (int c = 0; c < n; ++c) {
      Neumaier acc;
      for (std::int64_t i = 0; i < m; ++i) {
        const double r = run.dev[static_cast<std::size_t>(i) * n + c] - mean_dev[c];
        const double wi = run.w[i];
        acc.add(wi * wi * r * r);
      }
      est.stderr_[c] = std::sqrt(acc.value()) / run.sw;
    }
    est.ess = run.sw * run.sw / run.sw2;
    est.log_normalizer = std::log(run.sw / static_cast<double>(run.drawn)) -
                         run.fmin / run.delta;
  } else {
    for (int c = 0; c < n; ++c) {
      Neumaier acc;
      for (std::int64_t i = 0; i < m; ++i) {
        const double r = run.dev[static_cast<std::size_t>(i) * n + c] - mean_dev[c];
        acc.add(r * r);
      }
      est.stderr_[c] = std::sqrt(acc.value() / (m - 1) / m);
    }
    est.ess = static_cast<double>(m);
    est.acceptance = static_cast<double>(m) / static_cast<double>(run.drawn);
    est.log_normalizer = std::log(est.acceptance);
  }

  // weighted covariance trace about the weighted mean, with a delta-method bar
  {
    Neumaier th, th2;
    for (std::int64_t i = 0; i < m; ++i) {
      double h = 0.0;
      for (int c = 0; c < n; ++c) {
        const double r = run.dev[static_cast<std::size_t>(i) * n + c] - mean_dev[c];
        h += r * r;
      }
      const double wi = weight_of(run, i);
      th.add(wi * h);
      th2.add(wi * wi * h * h);
    }
    const double trace = th.value() / run.sw;
    est.cov_trace = run.weighted ? trace : trace * m / (m - 1.0);
    Neumaier dev2;
    for (std::int64_t i = 0; i < m; ++i) {
      double h = 0.0;
      for (int c = 0; c < n; ++c) {
        const double r = run.dev[static_cast<std::size_t>(i) * n + c] - mean_dev[c];
        h += r * r;
      }
      const double wi = weight_of(run, i);
      const double e = wi * (h - trace);
      dev2.add(e * e);
    }
    est.cov_trace_stderr = std::sqrt(dev2.value()) / run.sw;
  }

  if (config.moment_ref) {
    const Vec ref_dev = *config.moment_ref - instance.x;
    Neumaier sq;
    for (std::int64_t i = 0; i < m; ++i) {
      double h = 0.0;
      for (int c = 0; c < n; ++c) {
        const double r = run.dev[static_cast<std::size_t>(i) * n + c] - ref_dev[c];
        h += r * r;
      }
      sq.add(weight_of(run, i) * h);
    }
    const double sm = sq.value() / run.sw;
    Neumaier var;
    for (std::int64_t i = 0; i < m; ++i) {
      double h = 0.0;
      for (int c = 0; c < n; ++c) {
        const double r = run.dev[static_cast<std::size_t>(i) * n + c] - ref_dev[c];
        h += r * r;
      }
      const double e = weight_of(run, i) * (h - sm);
      var.add(e * e);
    }
    est.second_moment = sm;
    est.second_moment_stderr = std::sqrt(var.value()) / run.sw;
  }
  return est;
}

}  // namespace

void EstimatorConfig::validate(int dim) const {
  if (!(delta > 0.0)) throw ParameterError("delta must be positive");
  if (samples < 2) throw ParameterError("samples must be >= 2");
  if (batch_size < 0 || batch_size > samples) {
    throw ParameterError("batch_size must lie in [1, samples]");
  }
  if (max_total_samples != 0 && max_total_samples < samples) {
    throw ParameterError("max_total_samples must be >= samples");
  }
  if (moment_ref && moment_ref->size() != dim) {
    throw ParameterError("moment_ref dimension mismatch");
  }
}

Estimate estimate_mdelta(const ProxInstance& instance, const EstimatorConfig& config) {
  check_config(instance, config);
  const Run run = run_any(instance, config);
  return summarize(instance, config, run);
}

Estimate estimate_pdelta(const ProxInstance& instance, const EstimatorConfig& config) {
  if (!instance.is_set) {
    throw ParameterError("estimate_pdelta requires a set instance");
  }
  return estimate_mdelta(instance, config);
}

std::vector<TailMass> tail_probability(const ProxInstance& instance,
                                       const EstimatorConfig& config, const Vec& center,
                                       const std::vector<double>& radii) {
  check_config(instance, config);
  for (double r : radii) {
    if (!(r > 0.0)) throw ParameterError("tail radii must be positive");
  }
  const Run run = run_any(instance, config);
  const int n = run.n;
  const Vec center_dev = center - instance.x;

  std::vector<TailMass> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const double r2 = r * r;
    Neumaier hit, hit2;
    for (std::int64_t i = 0; i < run.count; ++i) {
      double d2 = 0.0;
      for (int c = 0; c < n; ++c) {
        const double d = run.dev[static_cast<std::size_t>(i) * n + c] - center_dev[c];
        d2 += d * d;
      }
      if (d2 >= r2) {
        const double wi = weight_of(run, i);
        hit.add(wi);
        hit2.add(wi * wi);
      }
    }
    const double mass = hit.value() / run.sw;
    // delta-method bar for the weighted fraction
    Neumaier var;
    for (std::int64_t i = 0; i < run.count; ++i) {
      double d2 = 0.0;
      for (int c = 0; c < n; ++c) {
        const double d = run.dev[static_cast<std::size_t>(i) * n + c] - center_dev[c];
        d2 += d * d;
      }
      const double ind = (d2 >= r2) ? 1.0 : 0.0;
      const double e = weight_of(run, i) * (ind - mass);
      var.add(e * e);
    }
    out.push_back({r, mass, std::sqrt(var.value()) / run.sw});
  }
  return out;
}

double empirical_cov_trace(const ProxInstance& instance, const EstimatorConfig& config) {
  return estimate_mdelta(instance, config).cov_trace;
}

}  // namespace proxsmooth
