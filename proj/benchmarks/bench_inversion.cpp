#include <benchmark/benchmark.h>

#include "poloc/inversion.hpp"

using namespace poloc;

static void BM_Invert(benchmark::State& state) {
  InversionOptions o;
  o.points = static_cast<int>(state.range(0));
  const RadialProfile g = power_profile(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(invert(g, o).normalization);
}
BENCHMARK(BM_Invert)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_Forward(benchmark::State& state) {
  const WeightFunction w = invert(power_profile(1.0));
  std::vector<double> ts;
  for (int i = 0; i < 200; ++i) ts.push_back(1.0 + 0.5 * i);
  for (auto _ : state) benchmark::DoNotOptimize(forward(w, ts).back());
}
BENCHMARK(BM_Forward)->Unit(benchmark::kMillisecond);
