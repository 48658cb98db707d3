#include <benchmark/benchmark.h>

#include "lvdyn/case_study.hpp"
#include "lvdyn/dynamics.hpp"
#include "lvdyn/fitting.hpp"
#include "lvdyn/sensitivity.hpp"
#include "lvdyn/sobol_sequence.hpp"

namespace {

using lvdyn::case_study::Subsystem;

lvdyn::ContinuousParams physical() {
  return lvdyn::case_study::published_table(Subsystem::AiPhysical).continuous;
}

void BM_FitZeroIntercept(benchmark::State& state) {
  const lvdyn::TimeSeries ts = lvdyn::case_study::bundled_series(Subsystem::AiPhysical);
  for (auto _ : state) benchmark::DoNotOptimize(lvdyn::fit_zero_intercept(ts));
}
BENCHMARK(BM_FitZeroIntercept);

void BM_IntegrateOde(benchmark::State& state) {
  const lvdyn::ContinuousParams cp = physical();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lvdyn::integrate_ode(cp, {15.4, 37202.1}, 10.0));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_IntegrateOde)->Unit(benchmark::kMillisecond);

void BM_PhaseGeometry(benchmark::State& state) {
  const lvdyn::ContinuousParams cp = physical();
  const lvdyn::BBox box = lvdyn::default_bbox(cp);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lvdyn::phase_geometry(cp, box, n));
}
BENCHMARK(BM_PhaseGeometry)->Arg(41)->Arg(201);

void BM_SobolSequence(benchmark::State& state) {
  lvdyn::SobolSequence seq(6, 1u);
  std::vector<double> p;
  for (auto _ : state) {
    seq.next(p);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_SobolSequence);

void BM_EquilibriumSensitivity(benchmark::State& state) {
  const lvdyn::ParamBounds bounds = lvdyn::bounds_from_baseline(physical(), 0.1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lvdyn::equilibrium_sensitivity(bounds, n, 20240101, workers));
  }
}
BENCHMARK(BM_EquilibriumSensitivity)->Args({1024, 1})->Args({1024, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
