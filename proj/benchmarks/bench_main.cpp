#include <benchmark/benchmark.h>

#include "snrlab/analytic.hpp"
#include "snrlab/monte_carlo.hpp"
#include "snrlab/qis.hpp"
#include "snrlab/sensor.hpp"
#include "snrlab/special.hpp"

namespace {

using namespace snrlab;

// Lower incomplete-gamma tail in the series regime (theta < L + 1).
void BM_PsiSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(psi(100, 60.0));
}
BENCHMARK(BM_PsiSeries);

// Same tail in the continued-fraction regime (theta >= L + 1).
void BM_PsiContinuedFraction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(psi(100, 400.0));
}
BENCHMARK(BM_PsiContinuedFraction);

void BM_TruncatedMoments(benchmark::State& state) {
  const double theta = double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(truncated_poisson_moments(theta, 100));
}
BENCHMARK(BM_TruncatedMoments)->Arg(10)->Arg(90)->Arg(300);

// Poisson sampling below and above the inversion/transformed-rejection switch.
void BM_PoissonSmallMean(benchmark::State& state) {
  SeededRng rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_poisson(3.0));
}
BENCHMARK(BM_PoissonSmallMean);

void BM_PoissonLargeMean(benchmark::State& state) {
  SeededRng rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_poisson(400.0));
}
BENCHMARK(BM_PoissonLargeMean);

// Full moment sweep as run by the mc-sim command (scaled-down sample count).
void BM_EstimateMoments(benchmark::State& state) {
  const auto grid = ExposureGrid::log_spaced(0.01, 100.0, 25);
  const auto model = truncated_poisson_model(10);
  for (auto _ : state) {
    auto est = estimate_moments(model, grid, std::size_t(state.range(0)), SeededRng(0, 0));
    benchmark::DoNotOptimize(est.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 25);
}
BENCHMARK(BM_EstimateMoments)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

// One-bit mean under read noise: the convolution series behind threshold sweeps.
void BM_OneBitMeanNoisy(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(one_bit_mean(2.0, 1.0, 0.35));
}
BENCHMARK(BM_OneBitMeanNoisy);

}  // namespace

BENCHMARK_MAIN();
