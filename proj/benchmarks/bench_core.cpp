#include <benchmark/benchmark.h>

#include "pinchlab/harmonics.hpp"
#include "pinchlab/multilinear.hpp"
#include "pinchlab/normal_subspace.hpp"
#include "pinchlab/pestov.hpp"
#include "pinchlab/sharpness.hpp"
#include "pinchlab/sphere_integral.hpp"
#include "pinchlab/thresholds.hpp"

using namespace pinchlab;

static void BM_SphereMeanProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = harmonic_basis(n, 3);
  RationalPolynomial a(n, 3), b(n, 3);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    a += basis[i] * Rational(static_cast<long>(i % 7) - 3, 4);
    b += basis[i] * Rational(static_cast<long>(i % 5) - 2, 3);
  }
  for (auto _ : state) benchmark::DoNotOptimize(sphere_mean_product(a, b));
}
BENCHMARK(BM_SphereMeanProduct)->Arg(4)->Arg(6)->Arg(8);

static void BM_HarmonicDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RationalPolynomial u(n, 4);
  long c = 1;
  for (Monomial m : monomials_of_degree(n, 4)) u += RationalPolynomial::monomial(n, m, Rational(c++ % 9 - 4));
  harmonic_decompose(u);
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_decompose(u));
}
BENCHMARK(BM_HarmonicDecompose)->Arg(4)->Arg(6);

static void BM_GTermForms(benchmark::State& state) {
  const auto u = normal_subspace_sample(static_cast<int>(state.range(0)), 3, Bundle::form(2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(g_term_forms(u));
}
BENCHMARK(BM_GTermForms)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_GTermSym2(benchmark::State& state) {
  const auto u = normal_subspace_sample(static_cast<int>(state.range(0)), 2, Bundle::sym2(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(g_term_sym2(u));
}
BENCHMARK(BM_GTermSym2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_FFunctional(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto u = to_double(random_harmonic_field(n, 3, Bundle::form(1), 1));
  for (auto _ : state) benchmark::DoNotOptimize(f_functional(u, Weights::One, 10000, 1));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_FFunctional)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SharpnessRestart(benchmark::State& state) {
  SearchConfig c;
  c.n = static_cast<int>(state.range(0));
  c.restarts = 1;
  c.iterations = 50;
  c.mc_samples = 20000;
  for (auto _ : state) benchmark::DoNotOptimize(sharpness_search(c));
}
BENCHMARK(BM_SharpnessRestart)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_MaxOverFrames(benchmark::State& state) {
  const auto r0 = r0_split(ch_model(2));
  for (auto _ : state) benchmark::DoNotOptimize(max_over_frames(r0, 10000, 1));
}
BENCHMARK(BM_MaxOverFrames)->Unit(benchmark::kMillisecond);

static void BM_DeltaMaster(benchmark::State& state) {
  for (auto _ : state) {
    for (int n = 3; n <= 500; ++n) benchmark::DoNotOptimize(delta_master(n));
  }
}
BENCHMARK(BM_DeltaMaster);

static void BM_MonotonicityScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(monotonicity_scan(GridRange{}));
}
BENCHMARK(BM_MonotonicityScan)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
