#include <benchmark/benchmark.h>

#include <vector>

#include "poloc/expansion.hpp"
#include "poloc/kernels.hpp"
#include "poloc/kinematics.hpp"
#include "poloc/pd.hpp"

using namespace poloc;

static std::vector<Vec3> sample(int n) {
  Rng rng(1);
  std::vector<Vec3> v;
  for (int i = 0; i < n; ++i) v.push_back(random_in_ball(rng, 10));
  return v;
}

static void BM_KernelEval(benchmark::State& state, Kernel K) {
  const auto pts = sample(256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(K(pts[i & 255], pts[(i * 7 + 3) & 255]));
    ++i;
  }
}
BENCHMARK_CAPTURE(BM_KernelEval, nwl, kernel_nwl());
BENCHMARK_CAPTURE(BM_KernelEval, terno_moretti, kernel_terno_moretti());
BENCHMARK_CAPTURE(BM_KernelEval, tct, kernel_tct());
BENCHMARK_CAPTURE(BM_KernelEval, causal_r1_5, kernel_causal_power(1.5));
BENCHMARK_CAPTURE(BM_KernelEval, principal_1, kernel_lorentz(profile_irreducible(Series::principal, 1.0)));

static void BM_GramTest(benchmark::State& state) {
  const Kernel K = kernel_causal_power(1.5);
  const auto pts = random_points(3, static_cast<int>(state.range(0)), 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(gram_test(K, pts).min_eigenvalue);
}
BENCHMARK(BM_GramTest)->Arg(30)->Arg(120);

static void BM_ExtractCoefficients(benchmark::State& state) {
  const Kernel K = kernel_lorentz(power_profile(0.5));
  const int J = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto c = extract_coefficients(K, J);
    benchmark::DoNotOptimize(c(J, 1.0, 2.0));
  }
}
BENCHMARK(BM_ExtractCoefficients)->Arg(8)->Arg(64);
