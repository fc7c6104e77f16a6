#include "proxsmooth/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "proxsmooth/catalog.hpp"
#include "proxsmooth/errors.hpp"
#include "proxsmooth/estimator.hpp"
#include "proxsmooth/quadrature.hpp"
#include "proxsmooth/rates.hpp"
#include "proxsmooth/rng.hpp"
#include "proxsmooth/specfun.hpp"

namespace proxsmooth {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

double clamp_margin(double m) { return std::max(-9.999, std::min(m, 1.0)); }

// observed <= allowed, margin = relative headroom
CheckRow upper_row(std::string criterion, std::string check, double observed,
                   double allowed) {
  CheckRow row;
  row.criterion = std::move(criterion);
  row.check = std::move(check);
  row.observed = fmt(observed);
  row.target = "<= " + fmt(allowed);
  row.pass = std::isfinite(observed) && observed <= allowed;
  if (allowed != 0.0 && std::isfinite(observed)) {
    row.margin = clamp_margin((allowed - observed) / std::abs(allowed));
  } else {
    row.margin = row.pass ? 1.0 : -9.999;
  }
  return row;
}

// lo <= observed <= hi, margin relative to the half width
CheckRow interval_row(std::string criterion, std::string check, double observed,
                      double lo, double hi) {
  CheckRow row;
  row.criterion = std::move(criterion);
  row.check = std::move(check);
  row.observed = fmt(observed);
  row.target = "in [" + fmt(lo) + ", " + fmt(hi) + "]";
  row.pass = std::isfinite(observed) && observed >= lo && observed <= hi;
  const double half = (hi - lo) / 2.0;
  const double mid = (hi + lo) / 2.0;
  row.margin = std::isfinite(observed)
                   ? clamp_margin((half - std::abs(observed - mid)) / half)
                   : -9.999;
  return row;
}

// |observed - target| <= tol, margin = relative headroom inside tol
CheckRow near_row(std::string criterion, std::string check, double observed,
                  double target, double tol) {
  CheckRow row;
  row.criterion = std::move(criterion);
  row.check = std::move(check);
  row.observed = fmt(observed);
  row.target = fmt(target) + " +- " + fmt(tol);
  const double diff = std::abs(observed - target);
  row.pass = std::isfinite(observed) && diff <= tol;
  row.margin = std::isfinite(observed) ? clamp_margin((tol - diff) / tol) : -9.999;
  return row;
}

CheckRow bool_row(std::string criterion, std::string check, bool pass,
                  std::string observed, std::string target) {
  CheckRow row;
  row.criterion = std::move(criterion);
  row.check = std::move(check);
  row.observed = std::move(observed);
  row.target = std::move(target);
  row.pass = pass;
  row.margin = pass ? 1.0 : -9.999;
  return row;
}

bool same_bits(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

CriterionReport finish(std::string name, std::vector<CheckRow> rows) {
  CriterionReport report;
  report.name = std::move(name);
  report.rows = std::move(rows);
  report.pass = !report.rows.empty();
  report.worst_margin = 1.0;
  for (const CheckRow& row : report.rows) {
    report.pass = report.pass && row.pass;
    report.worst_margin = std::min(report.worst_margin, row.margin);
  }
  return report;
}

// The worst (error, allowance) pair of a bound check as one table row.
CheckRow bound_summary_row(const std::string& criterion, const std::string& check,
                           const BoundCheck& bound) {
  double worst_ratio = 0.0;
  bool all_ok = bound.pass;
  for (const BoundCheckEntry& entry : bound.entries) {
    if (!entry.pass) all_ok = false;
    if (std::isfinite(entry.err) && std::isfinite(entry.allowed) &&
        entry.allowed > 0.0) {
      worst_ratio = std::max(worst_ratio, entry.err / entry.allowed);
    }
  }
  CheckRow row = upper_row(criterion, check, worst_ratio, 1.0);
  row.pass = row.pass && all_ok;
  row.observed = "max err/allowed " + fmt(worst_ratio);
  return row;
}

// ---- criterion implementations -------------------------------------------

CriterionReport quadratic_exactness(std::uint64_t, int) {
  const char* name = "quadratic-exactness";
  std::vector<CheckRow> rows;
  for (const char* id : {"quadratic:id=iso1", "quadratic:id=iso2",
                         "quadratic:id=diag12"}) {
    for (double lambda : {0.5, 1.0}) {
      auto inst = catalog::make_instance(id);
      inst.lambda = lambda;
      const Vec target = inst.exact(inst.x);
      for (double delta : {0.5, 0.1, 0.02}) {
        const QuadratureResult res = mdelta_quadrature(inst, delta);
        const double err = (res.point - target).norm();
        rows.push_back(upper_row(
            name,
            std::string(id + 13) + " lambda=" + fmt(lambda) + " delta=" + fmt(delta),
            err, 1e-8));
      }
    }
  }
  return finish(name, rows);
}

CriterionReport hinge_sqrt_rate(std::uint64_t seed, int jobs) {
  const char* name = "hinge-sqrt-rate";
  std::vector<CheckRow> rows;
  for (int n : {1, 2, 3}) {
    const auto inst = catalog::make_instance("sum_max:n=" + std::to_string(n));
    SweepConfig config;
    config.seed = seed;
    config.jobs = jobs;
    const RateSweep sweep = run_sweep(inst, geometric_grid(1e-1, 1e-5, 9), config);
    const std::string label = "n=" + std::to_string(n);
    rows.push_back(bound_summary_row(name, label + " err <= sqrt(n delta)",
                                     check_bound(sweep, 0.0)));
    rows.push_back(
        interval_row(name, label + " slope", fit_loglog(sweep).slope, 0.45, 0.55));
    const SharpnessEstimate sharp = sharpness_constant(sweep, 0.5);
    const double constant = std::sqrt(2.0 * n / M_PI);
    rows.push_back(near_row(name, label + " err/sqrt(delta) at 1e-5",
                            sharp.at_smallest, constant, 0.02 * constant));
  }
  return finish(name, rows);
}

CriterionReport hinge_sharp_constant(std::uint64_t seed, int jobs) {
  const char* name = "hinge-sharp-constant";
  const auto inst = catalog::make_instance("sum_max:n=1");
  SweepConfig config;
  config.seed = seed;
  config.jobs = jobs;
  const RateSweep sweep = run_sweep(inst, geometric_grid(1e-1, 1e-4, 7), config);
  const SharpnessEstimate sharp = sharpness_constant(sweep, 0.5);
  const double constant = std::sqrt(2.0 / M_PI);
  std::vector<CheckRow> rows;
  rows.push_back(near_row(name, "err/sqrt(delta) at delta=1e-4", sharp.at_smallest,
                          constant, 0.02 * constant));
  rows.push_back(near_row(name, "Richardson over last three points",
                          sharp.richardson, constant, 0.005 * constant));
  return finish(name, rows);
}

CriterionReport cone_sharp_constant(std::uint64_t seed, int) {
  const char* name = "cone-sharp-constant";
  const auto inst = catalog::make_instance("cone:alpha=0.7853981633974483,n=2");
  const double target = specfun::chi_mean(2) * specfun::cap_mean(M_PI / 4.0, 2);
  std::vector<CheckRow> rows;
  int index = 0;
  for (double delta : {1e-2, 1e-3}) {
    EstimatorConfig config;
    config.delta = delta;
    config.samples = 1000000;
    config.seed = seed;
    config.task = 40 + static_cast<std::uint64_t>(index++);
    const Estimate est = estimate_pdelta(inst, config);
    const double observed = est.point.norm() / std::sqrt(delta);
    const double se = est.stderr_.norm() / std::sqrt(delta);
    rows.push_back(near_row(name, "|m(0)|/sqrt(delta), delta=" + fmt(delta),
                            observed, target, 3.0 * se));
  }
  return finish(name, rows);
}

CriterionReport localization(std::uint64_t seed, int) {
  const char* name = "localization";
  const auto inst = catalog::make_instance("sum_max:n=2");
  EstimatorConfig config;
  config.delta = 1e-2;
  config.samples = 100000;
  config.seed = seed;
  config.task = 50;
  const ConcentrationReport report =
      concentration_check(inst, config, {0.3, 0.5, 1.0}, {0.5, 0.1, 0.01});

  std::vector<CheckRow> rows;
  const double rel = report.second_moment > 0.0
                         ? report.second_moment_stderr / report.second_moment
                         : 0.0;
  rows.push_back(upper_row(name, "E|Y-prox|^2", report.second_moment,
                           report.second_moment_limit * (1.0 + 5.0 * rel)));
  for (const ConcentrationEntry& entry : report.tails) {
    rows.push_back(upper_row(name, "tail mass at r=" + fmt(entry.radius),
                             entry.observed, entry.limit + 4.0 * entry.stderr_));
  }
  for (std::size_t j = 0; j < report.ball_mass.size(); ++j) {
    const ConcentrationEntry& entry = report.ball_mass[j];
    const double floor = entry.limit - 4.0 * entry.stderr_;
    CheckRow row;
    row.criterion = name;
    row.check = "ball mass at r=" + fmt(entry.radius);
    row.observed = fmt(entry.observed);
    row.target = ">= " + fmt(floor);
    row.pass = entry.pass;
    row.margin = clamp_margin((entry.observed - floor) /
                              std::max(1e-12, 1.0 - floor));
    rows.push_back(row);
  }
  return finish(name, rows);
}

CriterionReport smooth_linear_rate(std::uint64_t seed, int jobs) {
  const char* name = "smooth-linear-rate";
  const auto inst = catalog::make_instance("logcosh");
  SweepConfig config;
  config.seed = seed;
  config.jobs = jobs;
  const RateSweep sweep = run_sweep(inst, geometric_grid(1e-1, 1e-4, 7), config);
  std::vector<CheckRow> rows;
  rows.push_back(bound_summary_row(name, "err <= (nL/mu^2) delta, L=4/(3 sqrt 3)",
                                   check_bound(sweep, 0.0)));
  rows.push_back(interval_row(name, "slope", fit_loglog(sweep).slope, 0.9, 1.1));
  return finish(name, rows);
}

// Anchors for the covariance check sit near each instance's target set or
// prox so both the importance sampler and the rejection sampler operate in
// their working regime at delta = 0.01; the covariance bound itself is
// anchor-uniform, and far anchors only starve the samplers (zero accepted
// draws or effective sample size ~ 1) without testing anything.
Vec covariance_anchor(const ProxInstance& inst) {
  const std::string& id = inst.id;
  Vec x = inst.x;
  if (id.rfind("quadratic:id=iso1", 0) == 0) {
    x[0] = 0.3;
  } else if (id.rfind("quadratic:id=iso2", 0) == 0) {
    x << 0.3, -0.2;
  } else if (id.rfind("quadratic:id=diag12", 0) == 0) {
    x << 0.25, 0.2;
  } else if (id.rfind("logcosh", 0) == 0) {
    x[0] = 0.15;
  } else if (id.rfind("halfspace", 0) == 0) {
    x << 0.05, 0.2;
  } else if (id.rfind("ball", 0) == 0) {
    x << 1.02, 0.1;
  }
  return x;
}

CriterionReport covariance_trace(std::uint64_t seed, int) {
  const char* name = "covariance-trace";
  std::vector<CheckRow> rows;
  std::uint64_t task = 70;
  for (const catalog::EntryInfo& entry : catalog::list_entries()) {
    auto inst = catalog::make_instance(entry.id);
    inst.x = covariance_anchor(inst);
    for (double delta : {0.1, 0.01}) {
      EstimatorConfig config;
      config.delta = delta;
      config.samples = 100000;
      config.seed = seed;
      config.task = task++;
      const Estimate est = estimate_mdelta(inst, config);
      const double bound =
          inst.dim() * delta / inst.mu();
      const double rel =
          est.cov_trace > 0.0 ? est.cov_trace_stderr / est.cov_trace : 0.0;
      rows.push_back(upper_row(name, entry.id + " delta=" + fmt(delta),
                               est.cov_trace, bound * (1.0 + 5.0 * rel)));
    }
  }
  return finish(name, rows);
}

CriterionReport projection_sqrt_rate(std::uint64_t seed, int jobs) {
  const char* name = "projection-sqrt-rate";
  std::vector<CheckRow> rows;
  for (const char* id : {"halfspace:d=1,n=2", "ball:n=2,r=1"}) {
    const auto inst = catalog::make_instance(id);
    SweepConfig config;
    config.seed = seed;
    config.jobs = jobs;
    const RateSweep sweep = run_sweep(inst, geometric_grid(1e-1, 1e-4, 7), config);
    rows.push_back(bound_summary_row(name, std::string(id) + " err <= sqrt(2 delta)",
                                     check_bound(sweep, 0.0)));
  }
  return finish(name, rows);
}

CriterionReport halfspace_projection(std::uint64_t seed, int jobs) {
  const char* name = "halfspace-projection";
  const auto inst = catalog::make_instance("halfspace:d=1,n=2");
  std::vector<CheckRow> rows;

  // closed form against the independent high-precision integral oracle
  const QuadratureResult closed = pdelta_quadrature(inst, 0.04);
  rows.push_back(near_row(name, "closed form first coord, delta=0.04",
                          closed.point[0], -0.0373007934251684231, 1e-6));

  EstimatorConfig mc;
  mc.delta = 0.04;
  mc.samples = 64;
  mc.seed = seed;
  mc.task = 90;
  mc.max_total_samples = 320000000;
  const Estimate est = estimate_pdelta(inst, mc);
  const double diff = (est.point - closed.point).norm();
  rows.push_back(near_row(name, "MC vs closed form (4 stderr)", diff, 0.0,
                          4.0 * est.stderr_.norm()));

  SweepConfig config;
  config.seed = seed;
  config.jobs = jobs;
  const RateSweep sweep = run_sweep(inst, geometric_grid(1e-1, 1e-4, 7), config);
  rows.push_back(interval_row(name, "slope", fit_loglog(sweep).slope, 0.95, 1.05));
  return finish(name, rows);
}

CriterionReport ball_linear_slope(std::uint64_t seed, int jobs) {
  const char* name = "ball-linear-slope";
  const auto inst = catalog::make_instance("ball:n=2,r=1");
  SweepConfig config;
  config.seed = seed;
  config.jobs = jobs;
  const RateSweep sweep = run_sweep(inst, geometric_grid(1e-1, 1e-4, 7), config);
  std::vector<CheckRow> rows;
  rows.push_back(interval_row(name, "slope", fit_loglog(sweep).slope, 0.9, 1.1));
  return finish(name, rows);
}

CriterionReport tail_bounds(std::uint64_t, int) {
  const char* name = "tail-bounds";
  std::vector<CheckRow> rows;

  // sandwich ordering across the log grid y in [1e-2, 10], delta in [1e-4, 10]
  int checked = 0;
  int failed = 0;
  double min_gap = kInf;
  for (int iy = 0; iy <= 12; ++iy) {
    const double y = 1e-2 * std::pow(1e3, iy / 12.0);
    for (int id = 0; id <= 12; ++id) {
      const double delta = 1e-4 * std::pow(1e5, id / 12.0);
      const auto rep = specfun::gaussian_tail_bounds(y, delta);
      const double slack = 1e-12 * std::max(1.0, std::abs(rep.log_integral));
      const double gap = std::min(rep.log_integral - rep.log_lower,
                                  rep.log_upper - rep.log_integral);
      ++checked;
      if (!(gap >= -slack) || !std::isfinite(gap)) ++failed;
      min_gap = std::min(min_gap, gap);
    }
  }
  rows.push_back(bool_row(name, "tail sandwich on the 13x13 (y, delta) grid",
                          failed == 0,
                          std::to_string(checked - failed) + "/" +
                              std::to_string(checked) + " ordered, min gap " +
                              fmt(min_gap),
                          "all ordered"));

  checked = 0;
  failed = 0;
  min_gap = kInf;
  for (unsigned n : {1u, 2u, 3u}) {
    for (unsigned k : {0u, 1u}) {
      for (double radius : {0.5, 1.0, 2.0}) {
        for (double shift : {0.0, 1.0}) {
          for (double frac : {1.0, 0.25, 0.05}) {
            const double delta = frac * radius * radius / (2.0 * n);
            const auto val = specfun::gaussian_radial_tail(n, radius, shift, k, delta);
            const auto env =
                specfun::gaussian_radial_tail_envelope(n, radius, shift, k, delta);
            const double gap = env.log_value - val.log_value;
            ++checked;
            if (!(gap >= -1e-12) || !std::isfinite(gap)) ++failed;
            min_gap = std::min(min_gap, gap);
          }
        }
      }
    }
  }
  rows.push_back(bool_row(name,
                          "boundary envelope on the (n, R, d, k, delta) grid",
                          failed == 0,
                          std::to_string(checked - failed) + "/" +
                              std::to_string(checked) + " dominated, min gap " +
                              fmt(min_gap),
                          "all dominated"));
  return finish(name, rows);
}

CriterionReport properties(std::uint64_t seed, int) {
  const char* name = "properties";
  std::vector<CheckRow> rows;

  {  // translation equivariance: shifting f and x shifts the estimate
    const auto base = catalog::make_instance("sum_max:n=2");
    ProxInstance origin = base;
    origin.x = (Vec(2) << 0.3, -0.2).finished();
    Vec c(2);
    c << 3.0, -1.0;
    ProxInstance shifted = base;
    auto inner = base.fn.evaluate;
    shifted.fn.evaluate = [inner, c](const Vec& y) { return inner(y - c); };
    shifted.fn.exact_prox = nullptr;
    shifted.x = origin.x + c;
    EstimatorConfig config;
    config.delta = 0.05;
    config.samples = 40000;
    config.seed = seed;
    config.task = 120;
    const Estimate e0 = estimate_mdelta(origin, config);
    const Estimate e1 = estimate_mdelta(shifted, config);
    const double dev = (e1.point - (e0.point + c)).cwiseAbs().maxCoeff();
    rows.push_back(upper_row(name, "translation equivariance", dev, 1e-12));
  }

  {  // adding a constant to f (quantized so the shift is exact) changes no bit
    auto quantized = [](const Vec& y) {
      const double raw = 0.5 * (y[0] * y[0] + 2.0 * y[1] * y[1]);
      return std::nearbyint(raw * 1048576.0) / 1048576.0;
    };
    ProxInstance a;
    a.id = "quantized";
    a.fn.name = "quantized";
    a.fn.dim = 2;
    a.fn.evaluate = quantized;
    a.x = (Vec(2) << 0.7, -0.4).finished();
    a.lambda = 1.0;
    ProxInstance b = a;
    b.fn.evaluate = [quantized](const Vec& y) { return quantized(y) + 7.25; };
    EstimatorConfig config;
    config.delta = 0.02;
    config.samples = 30000;
    config.seed = seed;
    config.task = 121;
    const Estimate ea = estimate_mdelta(a, config);
    const Estimate eb = estimate_mdelta(b, config);
    const bool bits_equal = same_bits(ea.point, eb.point) &&
                            same_bits(ea.stderr_, eb.stderr_) &&
                            ea.ess == eb.ess && ea.cov_trace == eb.cov_trace;
    const double ln_shift =
        std::abs((eb.log_normalizer - ea.log_normalizer) + 7.25 / 0.02);
    rows.push_back(bool_row(name, "weight-shift invariance (bits)", bits_equal,
                            bits_equal ? "identical" : "differs", "identical"));
    rows.push_back(upper_row(name, "weight-shift log-normalizer offset", ln_shift,
                             1e-9));
  }

  {  // batch size must not change any output bit
    const auto inst = catalog::make_instance("sum_max:n=2");
    EstimatorConfig config;
    config.delta = 0.05;
    config.samples = 20000;
    config.seed = seed;
    config.task = 122;
    EstimatorConfig odd = config;
    odd.batch_size = 977;
    EstimatorConfig unit = config;
    unit.batch_size = 1;
    const Estimate e1 = estimate_mdelta(inst, config);
    const Estimate e2 = estimate_mdelta(inst, odd);
    const Estimate e3 = estimate_mdelta(inst, unit);
    const bool equal = same_bits(e1.point, e2.point) &&
                       same_bits(e1.point, e3.point) &&
                       same_bits(e1.stderr_, e2.stderr_) && e1.ess == e2.ess &&
                       e1.log_normalizer == e3.log_normalizer &&
                       e1.cov_trace == e2.cov_trace;
    rows.push_back(bool_row(name, "batch-split determinism (bits)", equal,
                            equal ? "identical" : "differs", "identical"));
  }

  {  // projections: nonexpansive and idempotent over a fixed scatter
    const auto hs = make_halfspace((Vec(2) << 0.6, 0.8).finished(), 0.25);
    const auto ball = make_ball((Vec(2) << -1.0, 2.0).finished(), 1.5);
    const auto cone = make_circular_cone(1.1, 2);
    const rng::SampleStream stream(seed, 123);
    int checked = 0;
    int failed = 0;
    double worst = 0.0;
    Vec u(2), v(2);
    for (const SetSpec* set : {&hs, &ball, &cone}) {
      for (int i = 0; i < 40; ++i) {
        stream.gaussians(static_cast<std::uint64_t>(2 * i), {u.data(), 2});
        stream.gaussians(static_cast<std::uint64_t>(2 * i + 1), {v.data(), 2});
        u *= 3.0;
        v *= 3.0;
        const Vec pu = set->exact_proj(u);
        const Vec pv = set->exact_proj(v);
        const double expansion = (pu - pv).norm() - (u - v).norm();
        const double drift = (set->exact_proj(pu) - pu).norm();
        worst = std::max(worst, std::max(expansion, drift));
        ++checked;
        if (expansion > 1e-12 || drift > 1e-12) ++failed;
      }
    }
    rows.push_back(bool_row(
        name, "projection nonexpansiveness + idempotence", failed == 0,
        std::to_string(checked - failed) + "/" + std::to_string(checked) +
            " ok, worst excess " + fmt(worst),
        "0 failures"));
  }

  {  // exact prox oracles vs the brute-force grid minimizer, 1-D entries
    const auto hinge = make_sum_max(1);
    const auto smooth = make_log_cosh();
    const auto quad =
        make_quadratic(Mat::Identity(1, 1) * 0.8, (Vec(1) << -0.2).finished(), 0.0);
    const rng::SampleStream stream(seed, 124);
    int checked = 0;
    int failed = 0;
    double worst = 0.0;
    double g[2];
    std::uint64_t draw = 0;
    for (const FunctionSpec* fn : {&hinge, &smooth, &quad}) {
      for (int i = 0; i < 50; ++i) {
        stream.gaussians(draw++, g);
        const double x = 2.0 * g[0];
        const double lambda = 0.05 + 2.0 * std::abs(g[1]);
        const double brute =
            brute_force_prox_1d(*fn, x, lambda, 8.0 + std::abs(x));
        const double exact = fn->exact_prox((Vec(1) << x).finished(), lambda)[0];
        const double diff = std::abs(brute - exact);
        worst = std::max(worst, diff);
        ++checked;
        if (diff > 1e-8) ++failed;
      }
    }
    rows.push_back(bool_row(
        name, "exact prox vs brute force (150 draws)", failed == 0,
        std::to_string(checked - failed) + "/" + std::to_string(checked) +
            " within 1e-8, worst " + fmt(worst),
        "0 failures"));
  }

  return finish(name, rows);
}

using CriterionFn = CriterionReport (*)(std::uint64_t, int);

const std::vector<std::pair<std::string, CriterionFn>>& registry() {
  static const std::vector<std::pair<std::string, CriterionFn>> table = {
      {"quadratic-exactness", quadratic_exactness},
      {"hinge-sqrt-rate", hinge_sqrt_rate},
      {"hinge-sharp-constant", hinge_sharp_constant},
      {"cone-sharp-constant", cone_sharp_constant},
      {"localization", localization},
      {"smooth-linear-rate", smooth_linear_rate},
      {"covariance-trace", covariance_trace},
      {"projection-sqrt-rate", projection_sqrt_rate},
      {"halfspace-projection", halfspace_projection},
      {"ball-linear-slope", ball_linear_slope},
      {"tail-bounds", tail_bounds},
      {"properties", properties},
  };
  return table;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& suites() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>>
      table = {
          {"all", {}},  // filled from the registry below
          {"prox-sqrt", {"hinge-sqrt-rate", "localization"}},
          {"prox-linear", {"smooth-linear-rate", "covariance-trace"}},
          {"proj-sqrt", {"projection-sqrt-rate"}},
          {"proj-linear", {"ball-linear-slope"}},
          {"examples",
           {"quadratic-exactness", "hinge-sharp-constant", "cone-sharp-constant",
            "halfspace-projection"}},
          {"tail-bounds", {"tail-bounds"}},
          {"properties", {"properties"}},
      };
  return table;
}

}  // namespace

std::vector<std::string> criterion_names() {
  std::vector<std::string> names;
  for (const auto& entry : registry()) names.push_back(entry.first);
  return names;
}

CriterionReport run_criterion(const std::string& name, std::uint64_t seed,
                              int jobs) {
  if (jobs < 1) throw ParameterError("run_criterion: jobs must be >= 1");
  for (const auto& entry : registry()) {
    if (entry.first == name) return entry.second(seed, jobs);
  }
  throw ParameterError("unknown criterion '" + name + "'");
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& entry : suites()) names.push_back(entry.first);
  return names;
}

std::vector<std::string> suite_criteria(const std::string& suite) {
  if (suite == "all") return criterion_names();
  for (const auto& entry : suites()) {
    if (entry.first == suite) return entry.second;
  }
  throw ParameterError("unknown verify suite '" + suite + "' (suites: all, "
                       "prox-sqrt, prox-linear, proj-sqrt, proj-linear, "
                       "examples, tail-bounds, properties)");
}

VerifyReport run_suite(const std::string& suite, std::uint64_t seed, int jobs) {
  VerifyReport report;
  report.suite = suite;
  report.seed = seed;
  report.pass = true;
  for (const std::string& name : suite_criteria(suite)) {
    report.criteria.push_back(run_criterion(name, seed, jobs));
    report.pass = report.pass && report.criteria.back().pass;
  }
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::string out = "verify suite '" + report.suite + "' (seed " +
                    std::to_string(report.seed) + ")\n\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-22s %-44s %-40s %-22s %8s %s\n",
                "criterion", "check", "observed", "target", "margin", "result");
  out += line;
  int checks = 0;
  for (const CriterionReport& criterion : report.criteria) {
    for (const CheckRow& row : criterion.rows) {
      std::snprintf(line, sizeof(line), "%-22s %-44s %-40s %-22s %8.3f %s\n",
                    row.criterion.c_str(), row.check.c_str(), row.observed.c_str(),
                    row.target.c_str(), row.margin, row.pass ? "pass" : "FAIL");
      out += line;
      ++checks;
    }
  }
  int passed = 0;
  for (const CriterionReport& criterion : report.criteria) {
    if (criterion.pass) ++passed;
  }
  std::snprintf(line, sizeof(line),
                "\nsummary: %d/%zu criteria passed (%d checks), overall %s\n",
                passed, report.criteria.size(), checks,
                report.pass ? "PASS" : "FAIL");
  out += line;
  return out;
}

}  // namespace proxsmooth
