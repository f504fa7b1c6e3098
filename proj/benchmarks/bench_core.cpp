#include <benchmark/benchmark.h>

#include "radiuslab/chains.hpp"
#include "radiuslab/numrange.hpp"
#include "radiuslab/quadrature.hpp"
#include "radiuslab/random.hpp"
#include "radiuslab/spectral.hpp"

using namespace radiuslab;

static void BM_EigHermitian(benchmark::State& state) {
  RngStream rng(1);
  const HermitianMatrix h(gen_random(Ensemble::Hermitian, state.range(0), rng));
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigHermitian)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_LambdaMax(benchmark::State& state) {
  RngStream rng(2);
  const HermitianMatrix h(gen_random(Ensemble::Hermitian, state.range(0), rng));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_max(h));
}
BENCHMARK(BM_LambdaMax)->RangeMultiplier(2)->Range(2, 32);

static void BM_NumericalRadius(benchmark::State& state) {
  RngStream rng(3);
  const auto a = gen_random(Ensemble::Ginibre, state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(a));
}
BENCHMARK(BM_NumericalRadius)->DenseRange(2, 8, 3)->Arg(16);

// Non-polynomial f forces the quadrature path.
static void BM_SegmentIntegral(benchmark::State& state) {
  RngStream rng(4);
  const auto n = state.range(0);
  const auto x = abs_operator(gen_random(Ensemble::Ginibre, n, rng));
  const auto y = abs_operator(gen_random(Ensemble::Ginibre, n, rng));
  const auto f = ScalarFunction::power(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_segment_integral(f, x, y));
}
BENCHMARK(BM_SegmentIntegral)->DenseRange(2, 8, 3);

static void BM_SupSweep(benchmark::State& state) {
  RngStream rng(5);
  const auto n = state.range(0);
  const auto p = gram(gen_random(Ensemble::Ginibre, n, rng));
  const auto q = gram(gen_random(Ensemble::Ginibre, n, rng));
  const SegmentObjective psi(ScalarFunction::power(1.5));
  for (auto _ : state) benchmark::DoNotOptimize(sup_convex_over_joint_range(p, q, psi));
}
BENCHMARK(BM_SupSweep)->DenseRange(2, 8, 3);

static void BM_ChainThmMain(benchmark::State& state) {
  RngStream rng(6);
  const auto a = gen_random(Ensemble::Ginibre, state.range(0), rng);
  const auto f = ScalarFunction::power(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(chain_thm_main(a, f));
}
BENCHMARK(BM_ChainThmMain)->DenseRange(2, 8, 3);
BENCHMARK_MAIN();
