#include "proxsmooth/rates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <Eigen/Dense>

#include "proxsmooth/errors.hpp"

namespace proxsmooth {

namespace {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct FitCore {
  double slope;
  double intercept;
  double r_squared;
};

// Least squares of y on x; r_squared defined as 1 when the ys are constant.
FitCore least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double m = static_cast<double>(xs.size());
  double xbar = 0.0;
  double ybar = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= m;
  ybar /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (!(sxx > 0.0)) {
    throw DegenerateFitError("log-log fit: all grid deltas in the window coincide");
  }
  FitCore fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += resid * resid;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

// A sweep point enters fits and extrapolations only when it succeeded, has a
// positive finite error, and (for Monte Carlo) its noise is at most 10% of
// the error it is supposed to resolve.
bool point_reliable(const RateSweep& sweep, const SweepPoint& pt) {
  if (pt.status != "ok") return false;
  if (!std::isfinite(pt.err)) return false;
  if (pt.err < 0.0) return false;
  if (sweep.method == Method::monte_carlo) {
    if (!std::isfinite(pt.spread)) return false;
    if (pt.spread > 0.1 * pt.err) return false;
  }
  return true;
}

void run_one_point(const ProxInstance& instance, const SweepConfig& config,
                   BoundKind kind, const Vec& target, std::size_t index,
                   SweepPoint& out) {
  out.seed = config.seed;
  try {
    if (config.method == Method::monte_carlo) {
      EstimatorConfig ec;
      ec.delta = out.delta;
      ec.samples = config.samples;
      ec.seed = config.seed;
      ec.task = static_cast<std::uint64_t>(index);
      ec.max_total_samples = config.max_total_samples;
      const Estimate est = estimate_mdelta(instance, ec);
      out.estimate = est.point;
      out.spread = est.stderr_.norm();
      out.ess = est.ess;
      out.acceptance = est.acceptance;
    } else {
      const QuadratureResult res = mdelta_quadrature(instance, out.delta, config.quadrature);
      out.estimate = res.point;
      out.spread = res.error_estimate;
    }
    out.err = (out.estimate - target).norm();
    if (kind != BoundKind::none && kind != BoundKind::proj_linear) {
      out.bound = bound_value(instance, kind, out.delta);
    }
    out.status = "ok";
  } catch (const ZeroMassError&) {
    out.status = "zero-mass";
  } catch (const MassUnderflowError&) {
    out.status = "mass-underflow";
  } catch (const AccuracyError&) {
    out.status = "no-convergence";
  } catch (const BoxError&) {
    out.status = "box";
  } catch (const EvaluationError&) {
    out.status = "evaluation";
  }
}

}  // namespace

const char* to_string(Method method) {
  return method == Method::monte_carlo ? "mc" : "quadrature";
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::prox_sqrt: return "prox-sqrt";
    case BoundKind::prox_linear: return "prox-linear";
    case BoundKind::proj_sqrt: return "proj-sqrt";
    case BoundKind::proj_linear: return "proj-linear";
    case BoundKind::none: return "none";
  }
  return "none";
}

Method method_from_string(const std::string& token) {
  if (token == "mc") return Method::monte_carlo;
  if (token == "quadrature") return Method::quadrature;
  throw ParameterError("unknown method '" + token + "' (expected mc or quadrature)");
}

std::vector<double> geometric_grid(double delta_max, double delta_min, int points) {
  if (!(std::isfinite(delta_max) && std::isfinite(delta_min)) || delta_min <= 0.0 ||
      delta_max <= delta_min) {
    throw ParameterError("geometric_grid needs 0 < delta_min < delta_max, got [" +
                         format_double(delta_min) + ", " + format_double(delta_max) + "]");
  }
  if (points < 2) {
    throw ParameterError("geometric_grid needs at least 2 points");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double log_max = std::log(delta_max);
  const double log_min = std::log(delta_min);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid[static_cast<std::size_t>(i)] = std::exp(log_max + t * (log_min - log_max));
  }
  grid.front() = delta_max;
  grid.back() = delta_min;
  return grid;
}

BoundKind default_bound_kind(const ProxInstance& instance) {
  if (instance.is_set) return BoundKind::proj_sqrt;
  if (std::isfinite(instance.fn.hessian_lipschitz)) return BoundKind::prox_linear;
  return BoundKind::prox_sqrt;
}

double bound_value(const ProxInstance& instance, BoundKind kind, double delta) {
  if (!(std::isfinite(delta) && delta > 0.0)) {
    throw ParameterError("bound_value needs delta > 0");
  }
  const double n = static_cast<double>(instance.dim());
  switch (kind) {
    case BoundKind::prox_sqrt:
      return std::sqrt(n * delta / instance.mu());
    case BoundKind::prox_linear: {
      const double lip = instance.fn.hessian_lipschitz;
      if (!std::isfinite(lip)) {
        throw ParameterError("instance '" + instance.id +
                             "' has no Hessian-Lipschitz constant for the linear bound");
      }
      const double mu = instance.mu();
      return n * lip / (mu * mu) * delta;
    }
    case BoundKind::proj_sqrt:
      return std::sqrt(n * delta);
    case BoundKind::proj_linear:
      throw ParameterError("the linear projection rate has no closed constant; "
                           "check it by slope");
    case BoundKind::none:
      throw ParameterError("bound kind 'none' has no value");
  }
  throw ParameterError("unknown bound kind");
}

RateSweep run_sweep(const ProxInstance& instance, const std::vector<double>& deltas,
                    const SweepConfig& config) {
  instance.validate();
  if (!instance.has_exact()) {
    throw ParameterError("run_sweep: instance '" + instance.id +
                         "' has no exact target to sweep against");
  }
  if (deltas.empty()) throw ParameterError("run_sweep needs a non-empty delta grid");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(std::isfinite(deltas[i]) && deltas[i] > 0.0)) {
      throw ParameterError("run_sweep: delta grid entries must be positive and finite");
    }
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw ParameterError("run_sweep: delta grid must be strictly decreasing");
    }
  }
  if (config.jobs < 1) throw ParameterError("run_sweep: jobs must be >= 1");
  if (config.method == Method::monte_carlo) {
    EstimatorConfig probe;
    probe.delta = deltas.front();
    probe.samples = config.samples;
    probe.seed = config.seed;
    probe.max_total_samples = config.max_total_samples;
    probe.validate(instance.dim());
  } else {
    config.quadrature.validate(instance.dim());
  }

  RateSweep sweep;
  sweep.instance_id = instance.id;
  sweep.n = instance.dim();
  sweep.lambda = instance.is_set ? 1.0 : instance.lambda;
  sweep.mu = instance.mu();
  sweep.method = config.method;
  sweep.bound_kind = config.bound_kind.value_or(default_bound_kind(instance));
  sweep.points.resize(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) sweep.points[i].delta = deltas[i];

  const Vec target = instance.exact(instance.x);

  const int jobs =
      std::min<int>(config.jobs, static_cast<int>(deltas.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      run_one_point(instance, config, sweep.bound_kind, target, i, sweep.points[i]);
    }
    return sweep;
  }

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sweep.points.size()) return;
      try {
        run_one_point(instance, config, sweep.bound_kind, target, i, sweep.points[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return sweep;
}

RateFit fit_loglog(const RateSweep& sweep, std::optional<std::pair<int, int>> window) {
  const int size = static_cast<int>(sweep.points.size());
  int first = 0;
  int last = size - 1;
  if (window) {
    first = window->first;
    last = window->second;
    if (first < 0 || last >= size || first > last) {
      throw ParameterError("fit window [" + std::to_string(first) + ", " +
                           std::to_string(last) + "] out of range for " +
                           std::to_string(size) + " sweep points");
    }
  } else if (size > 0) {
    // Default window: drop the largest decade so the asymptotic slope is not
    // tilted by higher-order drift at coarse delta.
    const double cutoff = sweep.points.front().delta / 10.0 * (1.0 + 1e-9);
    while (first < size && sweep.points[static_cast<std::size_t>(first)].delta > cutoff) {
      ++first;
    }
  }

  std::vector<double> xs;
  std::vector<double> ys;
  RateFit fit;
  for (int i = first; i <= last && i < size; ++i) {
    const SweepPoint& pt = sweep.points[static_cast<std::size_t>(i)];
    if (!point_reliable(sweep, pt)) continue;
    if (pt.err == 0.0) {
      throw DegenerateFitError("log-log fit: exact (zero-error) point at delta = " +
                               format_double(pt.delta) +
                               "; the instance admits no rate fit");
    }
    xs.push_back(std::log(pt.delta));
    ys.push_back(std::log(pt.err));
    fit.window.push_back(i);
  }
  if (xs.size() < 3) {
    throw DegenerateFitError("log-log fit: only " + std::to_string(xs.size()) +
                             " reliable points in the window (need 3)");
  }
  const FitCore core = least_squares(xs, ys);
  fit.slope = core.slope;
  fit.intercept = core.intercept;
  fit.r_squared = core.r_squared;
  return fit;
}

RateFit fit_loglog(const std::vector<double>& deltas, const std::vector<double>& errors) {
  if (deltas.size() != errors.size()) {
    throw ParameterError("fit_loglog: deltas and errors must have equal length");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  RateFit fit;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(std::isfinite(deltas[i]) && deltas[i] > 0.0) || !std::isfinite(errors[i]) ||
        errors[i] < 0.0) {
      throw ParameterError("fit_loglog: points must have positive delta and finite error");
    }
    if (errors[i] == 0.0) {
      throw DegenerateFitError("log-log fit: exact (zero-error) point at delta = " +
                               format_double(deltas[i]));
    }
    xs.push_back(std::log(deltas[i]));
    ys.push_back(std::log(errors[i]));
    fit.window.push_back(static_cast<int>(i));
  }
  if (xs.size() < 3) {
    throw DegenerateFitError("log-log fit: need at least 3 points, got " +
                             std::to_string(xs.size()));
  }
  const FitCore core = least_squares(xs, ys);
  fit.slope = core.slope;
  fit.intercept = core.intercept;
  fit.r_squared = core.r_squared;
  return fit;
}

BoundCheck check_bound(const RateSweep& sweep, double slack) {
  if (!(std::isfinite(slack) && slack >= 0.0)) {
    throw ParameterError("check_bound: slack must be finite and >= 0");
  }
  if (sweep.bound_kind == BoundKind::none || sweep.bound_kind == BoundKind::proj_linear) {
    throw ParameterError("check_bound: sweep carries no bound values (kind '" +
                         std::string(to_string(sweep.bound_kind)) + "')");
  }
  // Noise allowance: 4 standard errors for Monte Carlo, 10 grid error
  // estimates for quadrature.
  const double k = sweep.method == Method::monte_carlo ? 4.0 : 10.0;
  BoundCheck check;
  check.pass = !sweep.points.empty();
  for (const SweepPoint& pt : sweep.points) {
    BoundCheckEntry entry;
    entry.delta = pt.delta;
    entry.err = pt.err;
    entry.bound = pt.bound;
    entry.status = pt.status;
    if (pt.status == "ok" && std::isfinite(pt.err) && std::isfinite(pt.bound)) {
      const double spread = std::isfinite(pt.spread) ? pt.spread : 0.0;
      entry.allowed = pt.bound * (1.0 + slack) + k * spread;
      entry.margin = entry.allowed - pt.err;
      entry.pass = pt.err <= entry.allowed;
    } else {
      entry.pass = false;
      if (entry.status == "ok") entry.status = "no-error-value";
    }
    if (!entry.pass) check.pass = false;
    if (std::isfinite(entry.margin) &&
        (!std::isfinite(check.worst_margin) || entry.margin < check.worst_margin)) {
      check.worst_margin = entry.margin;
    }
    check.entries.push_back(entry);
  }
  return check;
}

SharpnessEstimate sharpness_constant(const RateSweep& sweep, double exponent) {
  if (!std::isfinite(exponent)) {
    throw ParameterError("sharpness_constant: exponent must be finite");
  }
  // Unlike slope fits, constant extraction keeps noisy Monte Carlo tails
  // (their uncertainty is reported, and spread > 20% of the error raises the
  // widened flag); only failed or zero-error points are dropped.
  std::vector<const SweepPoint*> reliable;
  for (const SweepPoint& pt : sweep.points) {
    if (pt.status == "ok" && std::isfinite(pt.err) && pt.err > 0.0) {
      reliable.push_back(&pt);
    }
  }
  if (reliable.size() < 3) {
    throw DegenerateFitError("sharpness_constant: only " +
                             std::to_string(reliable.size()) +
                             " usable points (need 3)");
  }

  SharpnessEstimate est;
  const SweepPoint& tail = *reliable.back();
  const double scale = std::pow(tail.delta, exponent);
  est.smallest_delta = tail.delta;
  est.at_smallest = tail.err / scale;
  est.spread_at_smallest = std::isfinite(tail.spread) ? tail.spread / scale : kNaN;
  if (std::isfinite(tail.spread) && tail.spread > 0.2 * tail.err) est.widened = true;

  // Fit v(delta) = A + B sqrt(delta) + C delta through the last three
  // reliable ratios v = err / delta^exponent and report the limit A.
  Eigen::Matrix3d system;
  Eigen::Vector3d values;
  for (int row = 0; row < 3; ++row) {
    const SweepPoint& pt = *reliable[reliable.size() - 3 + static_cast<std::size_t>(row)];
    system(row, 0) = 1.0;
    system(row, 1) = std::sqrt(pt.delta);
    system(row, 2) = pt.delta;
    values(row) = pt.err / std::pow(pt.delta, exponent);
    if (std::isfinite(pt.spread) && pt.spread > 0.2 * pt.err) est.widened = true;
  }
  est.richardson = system.fullPivLu().solve(values)(0);
  return est;
}

ConcentrationReport concentration_check(const ProxInstance& instance,
                                        const EstimatorConfig& config,
                                        const std::vector<double>& tail_radii,
                                        const std::vector<double>& etas) {
  instance.validate();
  if (!instance.has_exact()) {
    throw ParameterError("concentration_check needs an instance with an exact target");
  }
  for (double r : tail_radii) {
    if (!(std::isfinite(r) && r > 0.0)) {
      throw ParameterError("concentration_check: tail radii must be positive");
    }
  }
  for (double eta : etas) {
    if (!(std::isfinite(eta) && eta > 0.0 && eta < 1.0)) {
      throw ParameterError("concentration_check: eta values must lie in (0, 1)");
    }
  }

  const Vec target = instance.exact(instance.x);
  const double n = static_cast<double>(instance.dim());
  const double mu = instance.mu();
  const double moment_limit = n * config.delta / mu;

  EstimatorConfig ec = config;
  ec.moment_ref = target;

  ConcentrationReport report;
  const Estimate est = estimate_mdelta(instance, ec);
  report.second_moment = est.second_moment;
  report.second_moment_stderr = est.second_moment_stderr;
  report.second_moment_limit = moment_limit;
  const double rel =
      est.second_moment > 0.0 ? est.second_moment_stderr / est.second_moment : 0.0;
  report.second_moment_pass = est.second_moment <= moment_limit * (1.0 + 5.0 * rel);
  report.pass = report.second_moment_pass;

  std::vector<double> radii = tail_radii;
  const std::size_t tail_count = tail_radii.size();
  for (double eta : etas) radii.push_back(std::sqrt(n * config.delta / (mu * eta)));

  const std::vector<TailMass> masses = tail_probability(instance, ec, target, radii);
  for (std::size_t i = 0; i < tail_count; ++i) {
    ConcentrationEntry entry;
    entry.radius = masses[i].radius;
    entry.observed = masses[i].mass;
    entry.stderr_ = masses[i].stderr_;
    entry.limit = std::min(1.0, n * config.delta / (mu * entry.radius * entry.radius));
    entry.pass = entry.observed <= entry.limit + 4.0 * entry.stderr_;
    if (!entry.pass) report.pass = false;
    report.tails.push_back(entry);
  }
  for (std::size_t j = 0; j < etas.size(); ++j) {
    const TailMass& tm = masses[tail_count + j];
    ConcentrationEntry entry;
    entry.radius = tm.radius;
    entry.observed = 1.0 - tm.mass;
    entry.stderr_ = tm.stderr_;
    entry.limit = 1.0 - etas[j];
    entry.pass = entry.observed >= entry.limit - 4.0 * entry.stderr_;
    if (!entry.pass) report.pass = false;
    report.ball_mass.push_back(entry);
  }
  return report;
}

}  // namespace proxsmooth
