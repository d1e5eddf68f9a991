#include <benchmark/benchmark.h>

#include "omcv/dynamics.hpp"
#include "omcv/figures.hpp"
#include "omcv/spectral.hpp"
#include "omcv/sweep.hpp"

namespace {

const omcv::PhysicalParams& fig2() {
  static const auto p = omcv::preset_params("fig2");
  return p;
}

void BM_Derive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(omcv::derive(fig2()));
}
BENCHMARK(BM_Derive);

void BM_Stability(benchmark::State& state) {
  const auto m = omcv::build(omcv::derive(fig2()));
  for (auto _ : state) benchmark::DoNotOptimize(omcv::stability(m));
}
BENCHMARK(BM_Stability);

void BM_LyapunovCM(benchmark::State& state) {
  const auto m = omcv::build(omcv::derive(fig2()));
  for (auto _ : state) benchmark::DoNotOptimize(omcv::lyapunov_cm(m));
}
BENCHMARK(BM_LyapunovCM);

void BM_OutputCM(benchmark::State& state) {
  const auto m = omcv::build(omcv::derive(fig2()));
  const auto f = omcv::filters_from(fig2());
  int evaluations = 0;
  for (auto _ : state) {
    const auto cm = omcv::output_cm(m, f);
    evaluations = cm.evaluations;
    benchmark::DoNotOptimize(cm);
  }
  state.counters["integrand_evals"] = evaluations;
}
BENCHMARK(BM_OutputCM)->Unit(benchmark::kMillisecond);

void BM_Sweep1D(benchmark::State& state) {
  omcv::SweepSpec spec;
  spec.axis1 = omcv::parse_axis("filter_omega_l/omega_m:0.5:1.5:" + std::to_string(state.range(0)));
  omcv::SweepOptions opts;
  opts.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(omcv::run_sweep(spec, fig2(), opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sweep1D)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
