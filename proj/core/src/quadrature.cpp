#include "proxsmooth/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "proxsmooth/accumulate.hpp"
#include "proxsmooth/errors.hpp"
#include "proxsmooth/gauss_legendre.hpp"
#include "proxsmooth/specfun.hpp"

namespace proxsmooth {
namespace {

// Mass threshold below which a grid-restricted conditional expectation is
// refused; the half-space closed form (or a larger delta) stays usable.
const double kLogMassFloor = std::log(1e-280);

// exp() underflows to zero well before this; skipping the call on dead
// grid points leaves the sums bit-identical.
constexpr double kDeadExponent = 745.0;

constexpr int kMaxPanelPoints = 128;  // largest cached Gauss-Legendre order

std::string format_vec(const Vec& v) {
  std::string out = "(";
  char buf[40];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.17g", i ? ", " : "", v[i]);
    out += buf;
  }
  out += ")";
  return out;
}

// ----------------------------------------------------------------------
// panel layout

// Panel edges for one axis of a tensor grid on [lo, hi].  `peak` is the
// coordinate of the proximal point, `sigma` the posterior scale
// sqrt(delta/mu): the live window [peak - 12 sigma, peak + 12 sigma] gets
// uniform sigma-wide panels, every kink gets a two-sided geometric ladder
// starting at the exp(-|.|/delta) structure scale, and the remainder out
// to the box faces is covered by coarsening panels.
std::vector<double> axis_edges(double lo, double hi, double peak, double sigma,
                               const std::vector<double>& kinks,
                               bool ladder_lo, bool ladder_hi,
                               double ladder_base) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw BoxError("quadrature box axis is empty or not finite");
  }
  std::vector<double> e{lo, hi};
  const double bl = std::max(lo, peak - 12.0 * sigma);
  const double bh = std::min(hi, peak + 12.0 * sigma);
  if (bh > bl) {
    int m = static_cast<int>(std::ceil((bh - bl) / sigma));
    m = std::clamp(m, 1, 64);
    for (int i = 0; i <= m; ++i) {
      e.push_back(bl + (bh - bl) * static_cast<double>(i) / m);
    }
  }
  const double ladder_top = 8.0 * sigma;
  const auto ladder = [&](double at, bool below, bool above) {
    if (at > lo && at < hi) e.push_back(at);
    for (double s = ladder_base; s < ladder_top; s *= 2.0) {
      if (below) {
        const double p = at - s;
        if (p > lo && p < hi) e.push_back(p);
      }
      if (above) {
        const double p = at + s;
        if (p > lo && p < hi) e.push_back(p);
      }
    }
  };
  for (double k : kinks) {
    if (k > lo && k < hi) ladder(k, true, true);
  }
  if (ladder_lo) ladder(lo, false, true);
  if (ladder_hi) ladder(hi, true, false);
  for (double t = bl, gap = 3.0 * sigma; t - lo > gap; gap *= 3.0) {
    t -= gap;
    e.push_back(t);
  }
  for (double t = bh, gap = 3.0 * sigma; hi - t > gap; gap *= 3.0) {
    t += gap;
    e.push_back(t);
  }
  std::sort(e.begin(), e.end());
  std::vector<double> out;
  out.reserve(e.size());
  const double tol = 1e-13 * (hi - lo);
  for (double v : e) {
    if (v < lo || v > hi) continue;
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  }
  out.front() = lo;
  out.back() = hi;
  if (out.size() < 2 || out.size() > 2048) {
    throw BoxError("quadrature axis panel layout degenerated");
  }
  return out;
}

struct AxisGrid {
  std::vector<double> x, w;
};

AxisGrid flatten_panels(const std::vector<double>& edges, int q) {
  const gl::Rule& r = gl::rule(q);
  AxisGrid g;
  g.x.reserve((edges.size() - 1) * static_cast<std::size_t>(q));
  g.w.reserve(g.x.capacity());
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < q; ++i) {
      g.x.push_back(mid + half * r.nodes[i]);
      g.w.push_back(half * r.weights[i]);
    }
  }
  return g;
}

// ----------------------------------------------------------------------
// shared refinement driver

struct EngineEval {
  Vec point;
  double log_normalizer = 0.0;
  std::int64_t evaluations = 0;
};

template <typename EvalFn>
QuadratureResult refine_to_tolerance(EvalFn&& eval, const ProxInstance& inst,
                                     double delta,
                                     const QuadratureConfig& config) {
  const int q0 = config.points_per_axis / 8;
  const double floor = std::sqrt(inst.dim() * delta * inst.lambda);
  QuadratureResult res;
  EngineEval prev = eval(q0);
  res.evaluations = prev.evaluations;
  Vec older;  // second-finest iterate, for the failure report
  for (int r = 1; r <= config.refinement_limit; ++r) {
    const int q = q0 << r;
    if (q > kMaxPanelPoints) break;
    EngineEval cur = eval(q);
    res.evaluations += cur.evaluations;
    const double diff = (cur.point - prev.point).norm();
    const double scale = std::max(cur.point.norm(), floor);
    if (diff <= config.target_rel_tol * scale) {
      res.point = cur.point;
      res.error_estimate = diff;
      res.log_normalizer = cur.log_normalizer;
      res.refinements = r;
      return res;
    }
    older = prev.point;
    prev = cur;
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "quadrature refinement stalled above the target tolerance "
                "%.3g (panel order cap %d); last two iterates ",
                config.target_rel_tol, kMaxPanelPoints);
  throw AccuracyError(std::string(buf) + format_vec(older) + " and " +
                      format_vec(prev.point) + " for " + inst.id);
}

// ----------------------------------------------------------------------
// cartesian tensor engine (smooth / axis-kink objectives, axis-aligned
// regions for indicator targets)

struct CartesianSpec {
  const ProxInstance* inst = nullptr;
  double delta = 0.0;
  Vec center;                        // panel peak, approximately the prox
  std::array<double, 3> lo{}, hi{};  // effective per-axis bounds
  std::array<std::vector<double>, 3> kinks;
  std::array<bool, 3> ladder_lo{}, ladder_hi{};
  // faces produced by the region (not the envelope box) are exempt from
  // the envelope mass check
  std::array<bool, 3> check_lo{}, check_hi{};
  bool indicator = false;  // integrate 1 instead of exp(-f/delta) extras
};

void check_envelope_mass(const CartesianSpec& s) {
  const int n = s.inst->dim();
  const double sigma = std::sqrt(s.delta / s.inst->mu());
  double outside = 0.0;
  for (int j = 0; j < n; ++j) {
    if (s.check_lo[j]) outside += specfun::normal_cdf(-(s.center[j] - s.lo[j]) / sigma);
    if (s.check_hi[j]) outside += specfun::normal_cdf(-(s.hi[j] - s.center[j]) / sigma);
  }
  if (!(outside <= 1e-12)) {
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "quadrature box leaves %.3g of the Gaussian envelope "
                  "outside (allowed 1e-12); enlarge the box radius",
                  outside);
    throw BoxError(buf);
  }
}

EngineEval eval_cartesian(const CartesianSpec& s, int q) {
  const ProxInstance& inst = *s.inst;
  const int n = inst.dim();
  const double delta = s.delta;
  const double lambda = s.indicator ? 1.0 : inst.lambda;
  const double sigma = std::sqrt(delta / inst.mu());
  const double ladder_base = delta / 16.0;

  std::array<AxisGrid, 3> ax;
  for (int j = 0; j < 3; ++j) {
    if (j < n) {
      ax[j] = flatten_panels(
          axis_edges(s.lo[j], s.hi[j], s.center[j], sigma, s.kinks[j],
                     s.ladder_lo[j], s.ladder_hi[j], ladder_base),
          q);
    } else {
      ax[j] = {{0.0}, {1.0}};
    }
  }

  Vec y = Vec::Zero(n);
  const Vec& anchor = inst.x;
  Neumaier den;
  std::array<Neumaier, 3> num;
  double gmin = kInf;
  std::int64_t evals = 0;

  const std::size_t s2 = ax[2].x.size();
  const std::size_t s1 = ax[1].x.size();
  const std::size_t s0 = ax[0].x.size();
  for (std::size_t i2 = 0; i2 < s2; ++i2) {
    double pen2 = 0.0;
    if (n > 2) {
      y[2] = ax[2].x[i2];
      const double d2 = anchor[2] - y[2];
      pen2 = d2 * d2;
    }
    for (std::size_t i1 = 0; i1 < s1; ++i1) {
      double pen12 = pen2;
      if (n > 1) {
        y[1] = ax[1].x[i1];
        const double d1 = anchor[1] - y[1];
        pen12 += d1 * d1;
      }
      const double w12 = ax[2].w[i2] * ax[1].w[i1];
      for (std::size_t i0 = 0; i0 < s0; ++i0) {
        y[0] = ax[0].x[i0];
        const double d0 = anchor[0] - y[0];
        const double pen = pen12 + d0 * d0;
        double g;
        if (s.indicator) {
          g = 0.5 * pen;
        } else {
          const double fv = inst.f(y);
          if (std::isnan(fv) || fv == -kInf) {
            throw EvaluationError(
                "objective returned " + std::string(std::isnan(fv) ? "NaN" : "-inf") +
                " at " + format_vec(y) + " on the quadrature grid");
          }
          ++evals;
          if (fv == kInf) continue;
          g = fv + pen / (2.0 * lambda);
        }
        if (g < gmin) {
          const double factor = std::exp((g - gmin) / delta);
          den.rescale(factor);
          for (int c = 0; c < n; ++c) num[c].rescale(factor);
          gmin = g;
        }
        const double arg = (g - gmin) / delta;
        if (arg > kDeadExponent) continue;
        const double wt = std::exp(-arg) * w12 * ax[0].w[i0];
        den.add(wt);
        for (int c = 0; c < n; ++c) num[c].add((y[c] - s.center[c]) * wt);
      }
    }
  }
  if (s.indicator) evals = static_cast<std::int64_t>(s0 * s1 * s2);

  const double den_v = den.value();
  if (!std::isfinite(gmin) || !(den_v > 0.0)) {
    throw EvaluationError("objective is not finite anywhere on the quadrature grid for " +
                          inst.id);
  }
  EngineEval out;
  out.point = Vec(n);
  for (int c = 0; c < n; ++c) out.point[c] = s.center[c] + num[c].value() / den_v;
  out.log_normalizer = std::log(den_v) - gmin / delta -
                       0.5 * n * std::log(2.0 * M_PI * delta * lambda);
  out.evaluations = evals;
  return out;
}

QuadratureResult run_cartesian(const ProxInstance& inst, double delta,
                               const QuadratureConfig& config,
                               CartesianSpec s) {
  s.inst = &inst;
  s.delta = delta;
  check_envelope_mass(s);
  QuadratureResult res = refine_to_tolerance(
      [&](int q) { return eval_cartesian(s, q); }, inst, delta, config);
  if (s.indicator && res.log_normalizer < kLogMassFloor) {
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "conditional set mass exp(%.6g) underflows doubles on a "
                  "grid; use the closed form or a larger delta",
                  res.log_normalizer);
    throw MassUnderflowError(buf);
  }
  return res;
}

CartesianSpec box_to_spec(const ProxInstance& inst, const Vec& center,
                          double radius) {
  CartesianSpec s;
  s.center = center;
  const int n = inst.dim();
  for (int j = 0; j < n; ++j) {
    s.lo[j] = center[j] - radius;
    s.hi[j] = center[j] + radius;
    s.check_lo[j] = s.check_hi[j] = true;
    if (inst.geometry.kind == Geometry::axis_kinks &&
        j < static_cast<int>(inst.geometry.axis_kinks.size())) {
      s.kinks[j] = inst.geometry.axis_kinks[j];
    }
  }
  return s;
}

// ----------------------------------------------------------------------
// scaled Bessel / angular kernels for the radial ball reduction

// I_nu(a) * exp(-a) without overflow; series switch keeps ~1e-15 accuracy.
double bessel_ive(int nu, double a) {
  if (a < 40.0) return std::cyl_bessel_i(nu, a) * std::exp(-a);
  const double mu4 = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 12; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu4 - odd * odd) / (8.0 * k * a);
    sum += term;
  }
  return sum / std::sqrt(2.0 * M_PI * a);
}

// integral of exp(a cos t) sin t over [0, pi], scaled by exp(-a):
// (1 - exp(-2a)) / a, with limit 2 at a = 0.
double sphere_kernel0(double a) {
  if (a == 0.0) return 2.0;
  return -std::expm1(-2.0 * a) / a;
}

double langevin(double a) {
  if (a < 0.1) {
    const double a2 = a * a;
    return a * (1.0 / 3.0 + a2 * (-1.0 / 45.0 + a2 * (2.0 / 945.0 - a2 / 4725.0)));
  }
  return 1.0 / std::tanh(a) - 1.0 / a;
}

// ----------------------------------------------------------------------
// ball: angular integral in closed form, radial panels on [0, R]

std::vector<double> radial_edges(double r_lo, double r_hi, double peak,
                                 double delta, bool boundary_ladder) {
  const double sd = std::sqrt(delta);
  std::vector<double> e{r_lo, r_hi};
  const double bl = std::max(r_lo, peak - 16.0 * sd);
  const double bh = std::min(r_hi, peak + 16.0 * sd);
  if (bh > bl) {
    const int m = 32;
    for (int i = 0; i <= m; ++i) e.push_back(bl + (bh - bl) * i / double(m));
  }
  if (boundary_ladder) {
    for (double s = delta / 16.0; s < 32.0 * sd; s *= 2.0) {
      const double p = r_hi - s;
      if (p > r_lo) e.push_back(p);
    }
  }
  for (double t = bl, gap = 2.0 * sd; t - r_lo > gap; gap *= 3.0) {
    t -= gap;
    e.push_back(t);
  }
  for (double t = bh, gap = 2.0 * sd; r_hi - t > gap; gap *= 3.0) {
    t += gap;
    e.push_back(t);
  }
  std::sort(e.begin(), e.end());
  std::vector<double> out;
  const double tol = 1e-13 * (r_hi - r_lo);
  for (double v : e) {
    if (v < r_lo || v > r_hi) continue;
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  }
  out.front() = r_lo;
  out.back() = r_hi;
  return out;
}

EngineEval eval_ball_radial(const ProxInstance& inst, double delta, int q) {
  const int n = inst.dim();
  const double R = inst.geometry.radius;
  const Vec& center = inst.geometry.center;
  const double d = (inst.x - center).norm();
  const Vec u = d > 0.0 ? Vec((inst.x - center) / d) : Vec(Vec::Unit(n, 0));

  const AxisGrid g =
      flatten_panels(radial_edges(0.0, R, std::min(d, R), delta, true), q);

  Neumaier den, num;
  double emin = kInf;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double r = g.x[i];
    const double a = r * d / delta;
    const double e = (r - d) * (r - d) / (2.0 * delta);
    if (e < emin) {
      const double factor = std::exp(e - emin);
      den.rescale(factor);
      num.rescale(factor);
      emin = e;
    }
    if (e - emin > kDeadExponent) continue;
    const double wq = std::exp(-(e - emin));
    const double rpow = n == 2 ? r : r * r;
    const double k0 = n == 2 ? bessel_ive(0, a) : sphere_kernel0(a);
    const double k1 = n == 2 ? bessel_ive(1, a) : k0 * langevin(a);
    den.add(wq * rpow * k0 * g.w[i]);
    num.add(wq * rpow * r * k1 * g.w[i]);
  }
  const double den_v = den.value();
  if (!(den_v > 0.0)) {
    throw EvaluationError("ball quadrature accumulated no mass for " + inst.id);
  }
  EngineEval out;
  out.point = center + (num.value() / den_v) * u;
  out.log_normalizer = std::log(2.0 * M_PI) + std::log(den_v) - emin -
                       0.5 * n * std::log(2.0 * M_PI * delta);
  out.evaluations = static_cast<std::int64_t>(g.x.size());
  return out;
}

// ----------------------------------------------------------------------
// circular cone about the e1 axis, anchor on the axis: polar grid in
// (radius, polar angle); the azimuthal directions integrate exactly.

EngineEval eval_cone_polar(const ProxInstance& inst, double delta, int q) {
  const int n = inst.dim();
  const double alpha = inst.geometry.cone_alpha;
  const double t = inst.x[0];
  const double sd = std::sqrt(delta);

  const double r_peak = std::max(t, 0.0);
  const double r_max = std::abs(t) + 40.0 * std::sqrt(n * delta);
  std::vector<double> redges = radial_edges(0.0, r_max, r_peak, delta, false);

  // angular structure scale at the mass radius: transverse sd over lever arm
  const double th_scale =
      std::min(1.0, sd / std::max(sd, std::sqrt(std::max(r_peak * t, 0.0))));
  std::vector<double> tedges{0.0, alpha};
  const double tb = std::min(alpha, 16.0 * th_scale);
  for (int i = 0; i <= 32; ++i) tedges.push_back(tb * i / 32.0);
  for (double v = tb, gap = 2.0 * th_scale; alpha - v > gap; gap *= 2.0) {
    v += gap;
    tedges.push_back(v);
  }
  std::sort(tedges.begin(), tedges.end());
  std::vector<double> tout;
  for (double v : tedges) {
    if (v < 0.0 || v > alpha) continue;
    if (tout.empty() || v - tout.back() > 1e-13 * alpha) tout.push_back(v);
  }
  tout.front() = 0.0;
  tout.back() = alpha;

  const AxisGrid rg = flatten_panels(redges, q);
  const AxisGrid tg = flatten_panels(tout, q);

  // measure: 2 r dr dtheta (n=2, reflection-symmetric) or
  // 2 pi r^2 sin(theta) dr dtheta (n=3)
  Neumaier den, num;
  double emin = kInf;
  for (std::size_t it = 0; it < tg.x.size(); ++it) {
    const double th = tg.x[it];
    const double ct = std::cos(th);
    const double ang =
        (n == 2 ? 2.0 : 2.0 * M_PI * std::sin(th)) * tg.w[it];
    for (std::size_t ir = 0; ir < rg.x.size(); ++ir) {
      const double r = rg.x[ir];
      const double e = (r * r - 2.0 * r * t * ct + t * t) / (2.0 * delta);
      if (e < emin) {
        const double factor = std::exp(e - emin);
        den.rescale(factor);
        num.rescale(factor);
        emin = e;
      }
      if (e - emin > kDeadExponent) continue;
      const double rpow = n == 2 ? r : r * r;
      const double wt = std::exp(-(e - emin)) * rpow * ang * rg.w[ir];
      den.add(wt);
      num.add(r * ct * wt);
    }
  }
  const double den_v = den.value();
  if (!(den_v > 0.0)) {
    throw EvaluationError("cone quadrature accumulated no mass for " + inst.id);
  }
  EngineEval out;
  out.point = Vec::Zero(n);
  out.point[0] = num.value() / den_v;
  out.log_normalizer = std::log(den_v) - emin -
                       0.5 * n * std::log(2.0 * M_PI * delta);
  out.evaluations = static_cast<std::int64_t>(rg.x.size() * tg.x.size());
  return out;
}

// ----------------------------------------------------------------------
// set dispatch

QuadratureResult halfspace_closed_form(const ProxInstance& inst, double delta) {
  const Vec& nu = inst.geometry.normal;
  const double d = nu.dot(inst.x) - inst.geometry.offset;
  const double tt = d / std::sqrt(delta);
  QuadratureResult res;
  // conditional normal mean along the normal direction, exact for all
  // signed distances
  res.point = inst.x - std::sqrt(delta) * specfun::normal_hazard(tt) * nu;
  res.log_normalizer = specfun::normal_logcdf(-tt);
  return res;
}

int aligned_axis(const Vec& nu) {
  int axis = -1;
  for (Eigen::Index j = 0; j < nu.size(); ++j) {
    if (std::abs(std::abs(nu[j]) - 1.0) <= 1e-12) {
      if (axis >= 0) return -1;
      axis = static_cast<int>(j);
    } else if (std::abs(nu[j]) > 1e-12) {
      return -1;
    }
  }
  return axis;
}

QuadratureResult run_set(const ProxInstance& inst, double delta,
                         const QuadratureConfig& config) {
  const int n = inst.dim();
  const auto box = [&]() -> std::pair<Vec, double> {
    if (config.box_center.has_value()) {
      return {*config.box_center, config.box_radius};
    }
    return choose_box(inst, delta);
  };
  switch (inst.geometry.kind) {
    case Geometry::halfspace: {
      if (!config.force_grid) return halfspace_closed_form(inst, delta);
      const int axis = aligned_axis(inst.geometry.normal);
      if (axis < 0) {
        throw ParameterError(
            "grid quadrature needs an axis-aligned half-space normal");
      }
      auto [center, radius] = box();
      CartesianSpec s = box_to_spec(inst, center, radius);
      s.indicator = true;
      const double edge = inst.geometry.offset / inst.geometry.normal[axis];
      if (inst.geometry.normal[axis] > 0.0) {
        s.hi[axis] = std::min(s.hi[axis], edge);
        s.ladder_hi[axis] = true;
        s.check_hi[axis] = false;
      } else {
        s.lo[axis] = std::max(s.lo[axis], edge);
        s.ladder_lo[axis] = true;
        s.check_lo[axis] = false;
      }
      return run_cartesian(inst, delta, config, std::move(s));
    }
    case Geometry::ball: {
      if (n == 1) {
        auto [center, radius] = box();
        CartesianSpec s = box_to_spec(inst, center, radius);
        s.indicator = true;
        const double c0 = inst.geometry.center[0];
        const double R = inst.geometry.radius;
        if (s.lo[0] < c0 - R) {
          s.lo[0] = c0 - R;
          s.check_lo[0] = false;
        }
        if (s.hi[0] > c0 + R) {
          s.hi[0] = c0 + R;
          s.check_hi[0] = false;
        }
        s.ladder_lo[0] = s.ladder_hi[0] = true;
        return run_cartesian(inst, delta, config, std::move(s));
      }
      return refine_to_tolerance(
          [&](int q) { return eval_ball_radial(inst, delta, q); }, inst, delta,
          config);
    }
    case Geometry::cone: {
      const double head = std::abs(inst.x[0]);
      double tail = 0.0;
      for (int j = 1; j < n; ++j) tail = std::max(tail, std::abs(inst.x[j]));
      if (tail > 1e-12 * std::max(1.0, head)) {
        throw ParameterError(
            "cone quadrature needs the anchor on the symmetry axis");
      }
      return refine_to_tolerance(
          [&](int q) { return eval_cone_polar(inst, delta, q); }, inst, delta,
          config);
    }
    default:
      throw ParameterError("no deterministic engine for the set layout of " +
                           inst.id);
  }
}

}  // namespace

void QuadratureConfig::validate(int dim) const {
  if (points_per_axis < 32 || points_per_axis % 2 != 0) {
    throw ParameterError("points_per_axis must be even and at least 32");
  }
  if (refinement_limit < 1) {
    throw ParameterError("refinement_limit must be at least 1");
  }
  if (!(target_rel_tol >= 1e-14)) {
    throw ParameterError("target_rel_tol must be at least 1e-14");
  }
  if (box_center.has_value()) {
    if (box_center->size() != dim) {
      throw ParameterError("box_center dimension does not match the instance");
    }
    if (!(box_radius > 0.0) || !std::isfinite(box_radius)) {
      throw ParameterError("box_radius must be positive and finite");
    }
  } else if (box_radius != 0.0) {
    throw ParameterError("box_radius requires box_center");
  }
}

std::pair<Vec, double> choose_box(const ProxInstance& instance, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ParameterError("delta must be positive and finite");
  }
  Vec center;
  if (instance.has_exact()) {
    center = instance.exact(instance.x);
  } else if (instance.dim() == 1 && !instance.is_set) {
    const double window = std::max(8.0, 4.0 * (1.0 + std::abs(instance.x[0])));
    center = Vec::Constant(
        1, brute_force_prox_1d(instance.fn, instance.x[0], instance.lambda,
                               window));
  } else {
    throw ParameterError(
        "choose_box needs an exact target or a one-dimensional objective");
  }
  const double n = static_cast<double>(instance.dim());
  const double radius = std::max((instance.x - center).norm(), 1.0) +
                        12.0 * std::sqrt(n * delta / instance.mu());
  return {center, radius};
}

QuadratureResult mdelta_quadrature(const ProxInstance& instance, double delta,
                                   const QuadratureConfig& config) {
  instance.validate();
  config.validate(instance.dim());
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ParameterError("delta must be positive and finite");
  }
  if (instance.dim() > 3) {
    throw ParameterError("deterministic quadrature supports dimension <= 3");
  }
  if (instance.is_set) return run_set(instance, delta, config);
  Vec center;
  double radius;
  if (config.box_center.has_value()) {
    center = *config.box_center;
    radius = config.box_radius;
  } else {
    std::tie(center, radius) = choose_box(instance, delta);
  }
  return run_cartesian(instance, delta, config,
                       box_to_spec(instance, center, radius));
}

QuadratureResult pdelta_quadrature(const ProxInstance& instance, double delta,
                                   const QuadratureConfig& config) {
  if (!instance.is_set) {
    throw ParameterError("smoothed projection needs a set instance");
  }
  return mdelta_quadrature(instance, delta, config);
}

}  // namespace proxsmooth
