#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "proxsmooth/errors.hpp"
#include "proxsmooth/problems.hpp"
#include "proxsmooth/rng.hpp"

using namespace proxsmooth;

namespace {

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

double dist(const Vec& a, const Vec& b) { return (a - b).norm(); }

// gaussian scatter around a center, deterministic across platforms
std::vector<Vec> scatter(const Vec& center, double scale, int count,
                         std::uint64_t task) {
  const rng::SampleStream s = rng::derive_stream(7041, task);
  std::vector<Vec> out;
  out.reserve(count);
  Vec g(center.size());
  for (int i = 0; i < count; ++i) {
    s.gaussians(static_cast<std::uint64_t>(i), std::span<double>(g.data(), g.size()));
    out.push_back(center + scale * g);
  }
  return out;
}

}  // namespace

TEST_CASE("quadratic prox closed form") {
  const auto iso2 = make_quadratic(Mat::Identity(2, 2), Vec::Zero(2), 0.0);
  CHECK(dist(iso2.exact_prox(vec2(2, 0), 1.0), vec2(1, 0)) < 1e-14);

  const auto zero2 = make_quadratic(Mat::Zero(2, 2), Vec::Zero(2), 0.0);
  const Vec x = vec2(0.3, -0.7);
  CHECK(dist(zero2.exact_prox(x, 2.5), x) < 1e-14);

  Mat A = Mat::Zero(2, 2);
  A.diagonal() << 1.0, 2.0;
  const auto diag12 = make_quadratic(A, vec2(1, 0), 0.0);
  CHECK(dist(diag12.exact_prox(vec2(2, -1), 0.5), vec2(1, -0.5)) < 1e-14);
}

TEST_CASE("quadratic rejects asymmetric matrices") {
  Mat A(2, 2);
  A << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(make_quadratic(A, Vec::Zero(2), 0.0), ParameterError);
}

TEST_CASE("sum_max prox soft-threshold branches") {
  const auto f = make_sum_max(1);
  CHECK(f.exact_prox(vec1(0), 1.0)[0] == 0.0);
  CHECK(f.exact_prox(vec1(2), 1.0)[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.exact_prox(vec1(-3), 1.0)[0] == -3.0);
  CHECK(f.exact_prox(vec1(0.4), 1.0)[0] == 0.0);  // pinned to the kink

  const auto f3 = make_sum_max(3);
  Vec x(3);
  x << -1.0, 0.25, 2.0;
  const Vec p = f3.exact_prox(x, 0.5);
  CHECK(p[0] == -1.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("log_cosh prox by safeguarded newton") {
  const auto f = make_log_cosh();
  CHECK(f.exact_prox(vec1(0), 1.0)[0] == 0.0);
  // roots frozen from a 40-digit solve of s*tanh(s t) + (t-x)/lambda = 0
  CHECK(f.exact_prox(vec1(2), 1.0)[0] ==
        doctest::Approx(1.174341138253663).epsilon(1e-12));
  CHECK(f.exact_prox(vec1(-1.3), 0.7)[0] ==
        doctest::Approx(-0.8254008701382359).epsilon(1e-12));
  // residual contract
  const double t = f.exact_prox(vec1(0.83), 1.3)[0];
  CHECK(std::abs(std::tanh(t) + (t - 0.83) / 1.3) <= 1e-13);
}

TEST_CASE("log_cosh third-derivative bound is the declared constant") {
  const auto f = make_log_cosh();
  const double L = 4.0 / (3.0 * std::sqrt(3.0));
  CHECK(f.hessian_lipschitz == doctest::Approx(L).epsilon(1e-15));
  double worst = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double t = -8.0 + 16.0 * i / 200000.0;
    const double c = std::cosh(t);
    worst = std::max(worst, std::abs(-2.0 * std::tanh(t) / (c * c)));
  }
  CHECK(worst <= L + 1e-9);
  CHECK(worst >= L - 1e-6);  // grid actually attains the max
}

TEST_CASE("halfspace projection") {
  const auto h = make_halfspace(vec2(1, 0), 0.0);
  CHECK(dist(h.exact_proj(vec2(3, 0)), vec2(0, 0)) < 1e-14);
  const Vec inside = vec2(-0.5, 4.0);
  CHECK(dist(h.exact_proj(inside), inside) == 0.0);

  const double s = 1.0 / std::sqrt(2.0);
  const auto diag = make_halfspace(vec2(s, s), 0.0);
  CHECK(dist(diag.exact_proj(vec2(1, 1)), vec2(0, 0)) < 1e-14);

  CHECK_THROWS_AS(make_halfspace(vec2(1, 1), 0.0), ParameterError);
}

TEST_CASE("ball projection") {
  const auto b = make_ball(Vec::Zero(2), 1.0);
  CHECK(dist(b.exact_proj(vec2(2, 0)), vec2(1, 0)) < 1e-14);
  CHECK(dist(b.exact_proj(Vec::Zero(2)), Vec::Zero(2)) == 0.0);

  const auto shifted = make_ball(vec2(1, 1), 0.5);
  CHECK(dist(shifted.exact_proj(vec2(1, 3)), vec2(1, 1.5)) < 1e-14);
  CHECK_THROWS_AS(make_ball(Vec::Zero(2), 0.0), ParameterError);
}

TEST_CASE("circular cone projection branches") {
  const auto cone = make_circular_cone(M_PI / 4.0, 2);
  CHECK(dist(cone.exact_proj(Vec::Zero(2)), Vec::Zero(2)) == 0.0);
  const Vec axis = vec2(2, 0);
  CHECK(dist(cone.exact_proj(axis), axis) == 0.0);
  CHECK(dist(cone.exact_proj(vec2(0, 1)), vec2(0.5, 0.5)) < 1e-14);
  // polar cone -> origin, including the tie s = -k t
  CHECK(dist(cone.exact_proj(vec2(-2, 0)), Vec::Zero(2)) == 0.0);
  CHECK(dist(cone.exact_proj(vec2(-1, 1)), Vec::Zero(2)) == 0.0);
  CHECK_THROWS_AS(make_circular_cone(0.0, 2), ParameterError);
  CHECK_THROWS_AS(make_circular_cone(M_PI / 2.0, 2), ParameterError);
  CHECK_THROWS_AS(make_circular_cone(0.5, 1), ParameterError);
}

TEST_CASE("cone projection satisfies the variational characterization") {
  const auto cone = make_circular_cone(0.6, 3);
  const auto points = scatter(Vec::Zero(3), 2.0, 64, 1);
  const auto members_raw = scatter(Vec::Zero(3), 2.0, 64, 2);
  for (const Vec& x : points) {
    const Vec p = cone.exact_proj(x);
    // output is in the cone (tolerate one ulp of the defining inequality)
    CHECK(p[0] >= p.norm() * std::cos(0.6) - 1e-12);
    for (const Vec& raw : members_raw) {
      const Vec c = cone.exact_proj(raw);  // arbitrary member
      CHECK((x - p).dot(c - p) <= 1e-10);
    }
  }
}

TEST_CASE("projections are nonexpansive and idempotent") {
  const auto hs = make_halfspace(vec2(0.6, 0.8), 0.25);
  const auto ball = make_ball(vec2(-1, 2), 1.5);
  const auto cone = make_circular_cone(1.1, 2);
  const auto pts = scatter(Vec::Zero(2), 3.0, 80, 3);
  for (const SetSpec* s : {&hs, &ball, &cone}) {
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      const Vec pa = s->exact_proj(pts[i]);
      const Vec pb = s->exact_proj(pts[i + 1]);
      CHECK(dist(pa, pb) <= dist(pts[i], pts[i + 1]) + 1e-12);
      CHECK(dist(s->exact_proj(pa), pa) <= 1e-12);
    }
  }
}

TEST_CASE("growth inequality holds at the prox") {
  struct Entry {
    FunctionSpec fn;
    Vec x;
    double lambda;
  };
  Mat A = Mat::Zero(2, 2);
  A.diagonal() << 1.0, 2.0;
  std::vector<Entry> entries;
  entries.push_back({make_quadratic(A, vec2(1, 0), 0.3), vec2(2, -1), 0.5});
  entries.push_back({make_sum_max(2), vec2(0.3, -0.2), 1.0});
  entries.push_back({make_log_cosh(), vec1(1.0), 1.0});
  std::uint64_t task = 10;
  for (const auto& e : entries) {
    const double mu = 1.0 / e.lambda - e.fn.rho;
    const Vec p = e.fn.exact_prox(e.x, e.lambda);
    const auto g = [&](const Vec& y) {
      return e.fn.evaluate(y) + (e.x - y).squaredNorm() / (2.0 * e.lambda);
    };
    const double gp = g(p);
    for (const Vec& y : scatter(p, 1.5, 1000, task++)) {
      CHECK(g(y) >= gp + 0.5 * mu * (y - p).squaredNorm() - 1e-9);
    }
  }
}

TEST_CASE("brute-force prox oracle") {
  const auto sm = make_sum_max(1);
  CHECK(brute_force_prox_1d(sm, 2.0, 1.0, 10.0) == doctest::Approx(1.0).epsilon(1e-10));

  const auto q = make_quadratic(Mat::Identity(1, 1), Vec::Zero(1), 0.0);
  CHECK(brute_force_prox_1d(q, 4.0, 1.0, 10.0) == doctest::Approx(2.0).epsilon(1e-10));

  const auto lc = make_log_cosh();
  CHECK(std::abs(brute_force_prox_1d(lc, 0.0, 1.0, 5.0)) < 1e-9);

  // true minimizer 12.5 sits outside [15, 35]: must refuse, not extrapolate
  CHECK_THROWS_AS(brute_force_prox_1d(q, 25.0, 1.0, 10.0), WindowError);
}

TEST_CASE("exact prox matches brute force on 1-D entries") {
  const auto sm = make_sum_max(1);
  const auto lc = make_log_cosh();
  const auto q = make_quadratic(Mat::Identity(1, 1) * 0.8, vec1(-0.2), 0.0);
  const rng::SampleStream s = rng::derive_stream(7041, 50);
  double g[2];
  for (const FunctionSpec* f : {&sm, &lc, &q}) {
    for (int i = 0; i < 50; ++i) {
      s.gaussians(static_cast<std::uint64_t>(i), g);
      const double x = 2.0 * g[0];
      const double lambda = 0.05 + 2.0 * std::abs(g[1]);
      const double brute = brute_force_prox_1d(*f, x, lambda, 8.0 + std::abs(x));
      const double exact = f->exact_prox(vec1(x), lambda)[0];
      CHECK(std::abs(brute - exact) <= 1e-8);
    }
  }
}

TEST_CASE("instance plumbing: indicator, validate, mu") {
  ProxInstance inst;
  inst.id = "ball:n=2,r=1";
  inst.is_set = true;
  inst.set = make_ball(Vec::Zero(2), 1.0);
  inst.x = vec2(2, 0);
  inst.lambda = 1.0;
  inst.validate();
  CHECK(inst.mu() == 1.0);
  CHECK(inst.f(vec2(0.5, 0)) == 0.0);
  CHECK(inst.f(vec2(2, 0)) == kInf);
  CHECK(inst.member(vec2(0.5, 0)));

  inst.lambda = 0.5;
  CHECK_THROWS_AS(inst.validate(), ParameterError);

  ProxInstance fn_inst;
  fn_inst.id = "logcosh";
  fn_inst.fn = make_log_cosh();
  fn_inst.x = vec1(1.0);
  fn_inst.lambda = 2.0;
  fn_inst.validate();
  CHECK(fn_inst.mu() == 0.5);
  CHECK_THROWS_AS(fn_inst.member(vec1(0.0)), ParameterError);

  const auto ind = indicator_of(make_ball(Vec::Zero(2), 1.0));
  CHECK(ind.evaluate(vec2(0, 0)) == 0.0);
  CHECK(ind.evaluate(vec2(3, 0)) == kInf);
  CHECK(dist(ind.exact_prox(vec2(2, 0), 0.7), vec2(1, 0)) < 1e-14);
}
