// Micro-benchmarks for the hot paths: the counter-based RNG, the special
// functions, the Monte Carlo estimators, and the deterministic quadrature.
#include <benchmark/benchmark.h>

#include <array>

#include "proxsmooth/catalog.hpp"
#include "proxsmooth/estimator.hpp"
#include "proxsmooth/quadrature.hpp"
#include "proxsmooth/rng.hpp"
#include "proxsmooth/specfun.hpp"

namespace ps = proxsmooth;

namespace {

void bm_rng_block(benchmark::State& state) {
  const std::array<std::uint64_t, 2> key{42, 7};
  std::array<std::uint64_t, 4> counter{0, 0, 0, 0};
  for (auto _ : state) {
    ++counter[0];
    benchmark::DoNotOptimize(ps::rng::philox4x64(counter, key));
  }
  state.SetItemsProcessed(state.iterations() * 4);  // four 64-bit words
}
BENCHMARK(bm_rng_block);

void bm_rng_gaussians_dim2(benchmark::State& state) {
  const ps::rng::SampleStream stream(42, 7);
  double out[2];
  std::uint64_t index = 0;
  for (auto _ : state) {
    stream.gaussians(index++, out);
    benchmark::DoNotOptimize(out[0]);
  }
  state.SetItemsProcessed(state.iterations() * 2);
}
BENCHMARK(bm_rng_gaussians_dim2);

void bm_specfun_tail_bounds(benchmark::State& state) {
  double y = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::specfun::gaussian_tail_bounds(y, 1e-3));
    y = y < 2.0 ? y + 1e-6 : 0.5;
  }
}
BENCHMARK(bm_specfun_tail_bounds);

void bm_specfun_normal_logcdf(benchmark::State& state) {
  double t = -8.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::specfun::normal_logcdf(t));
    t = t < 8.0 ? t + 1e-6 : -8.0;
  }
}
BENCHMARK(bm_specfun_normal_logcdf);

void bm_estimate_importance_hinge2(benchmark::State& state) {
  const auto inst = ps::catalog::make_instance("sum_max:n=2");
  ps::EstimatorConfig config;
  config.delta = 0.05;
  config.samples = state.range(0);
  for (auto _ : state) {
    config.task++;  // fresh stream each iteration, same cost profile
    benchmark::DoNotOptimize(ps::estimate_mdelta(inst, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_estimate_importance_hinge2)->Arg(1000)->Arg(10000);

void bm_estimate_rejection_ball(benchmark::State& state) {
  auto inst = ps::catalog::make_instance("ball:n=2,r=1");
  inst.x = (ps::Vec(2) << 1.02, 0.1).finished();
  ps::EstimatorConfig config;
  config.delta = 0.01;
  config.samples = state.range(0);
  for (auto _ : state) {
    config.task++;
    benchmark::DoNotOptimize(ps::estimate_pdelta(inst, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_estimate_rejection_ball)->Arg(1000)->Arg(10000);

void bm_quadrature_hinge1(benchmark::State& state) {
  const auto inst = ps::catalog::make_instance("sum_max:n=1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::mdelta_quadrature(inst, 1e-3));
  }
}
BENCHMARK(bm_quadrature_hinge1);

void bm_quadrature_ball_radial(benchmark::State& state) {
  const auto inst = ps::catalog::make_instance("ball:n=2,r=1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::pdelta_quadrature(inst, 1e-2));
  }
}
BENCHMARK(bm_quadrature_ball_radial);

}  // namespace

BENCHMARK_MAIN();
