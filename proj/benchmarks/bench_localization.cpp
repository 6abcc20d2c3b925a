#include <benchmark/benchmark.h>

#include "poloc/localization.hpp"

using namespace poloc;

static void BM_BallOperator(benchmark::State& state) {
  const Kernel K = kernel_causal_power(1.5);
  for (auto _ : state) {
    const BallOperator op(K, 1.0, 10.0, 0, state.range(0) / 4.0);
    benchmark::DoNotOptimize(op.matrix(0)(0, 0));
  }
}
BENCHMARK(BM_BallOperator)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Probability(benchmark::State& state, Kernel K, Method m) {
  ProbabilityOptions o;
  o.method = m;
  o.qmc_points = 1u << 14;
  o.qmc_randomizations = 4;
  const StateWavepacket phi = gaussian_state(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(probability(K, phi, BallRegion(1.0), o).value);
}
BENCHMARK_CAPTURE(BM_Probability, tensor_tm, kernel_terno_moretti(), Method::tensor_quadrature)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Probability, partial_wave_tm, kernel_terno_moretti(), Method::partial_wave)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Probability, qmc_tm, kernel_terno_moretti(), Method::quasi_monte_carlo)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Probability, tensor_causal, kernel_causal_power(1.5), Method::tensor_quadrature)
    ->Unit(benchmark::kMillisecond);

static void BM_PlssTerm(benchmark::State& state) {
  const Kernel K = kernel_terno_moretti();
  const double n = static_cast<double>(state.range(0));
  for (auto _ : state) {
    const auto s = plss_state(K, Vec3(0, 0, 1), Vec3::Zero(), n);
    benchmark::DoNotOptimize(probability(K, s, BallRegion(2.0)).value);
  }
}
BENCHMARK(BM_PlssTerm)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
