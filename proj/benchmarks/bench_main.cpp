#include <benchmark/benchmark.h>

#include <cmath>

#include "anai/anai.hpp"

namespace {

using namespace anai;

ScenarioConfig scenario(bool feedback) {
  ScenarioConfig s;
  s.autonomy = {0.5, 0.9, 0.1};
  s.infra = {0.3, 0.8, 0.05};
  s.tau = UnitScore{0.5};
  s.grid = {0.0, 50.0, 0.01};
  if (feedback) s.feedback = FeedbackParams{1.5, 0.1, 0.05, 1.0};
  return s;
}

void BM_SimulateDecoupled(benchmark::State& state) {
  const auto s = scenario(false);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(s));
}
BENCHMARK(BM_SimulateDecoupled);

void BM_SimulateFeedback(benchmark::State& state) {
  const auto s = scenario(true);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(s));
}
BENCHMARK(BM_SimulateFeedback);

void BM_FitLogistic(benchmark::State& state) {
  std::vector<Sample> samples;
  for (int t = 0; t < state.range(0); ++t) {
    const double x = 20.0 * t / (state.range(0) - 1);
    samples.push_back({x, 0.9 / (1.0 + 8.0 * std::exp(-0.5 * x))});
  }
  const ObservedSeries series{samples};
  for (auto _ : state) benchmark::DoNotOptimize(fit_logistic(series));
}
BENCHMARK(BM_FitLogistic)->Arg(21)->Arg(201);

void BM_RegimeGrid(benchmark::State& state) {
  const ClassifierConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(regime_grid(cfg, state.range(0)));
}
BENCHMARK(BM_RegimeGrid)->Arg(32)->Arg(256);

void BM_Sweep(benchmark::State& state) {
  const SweepSpec spec{scenario(false), SweepParameter::Tau, {0.2, 0.3, 0.4, 0.5, 0.6, 0.7}};
  for (auto _ : state) benchmark::DoNotOptimize(sensitivity_sweep(spec));
}
BENCHMARK(BM_Sweep);

}  // namespace

BENCHMARK_MAIN();
