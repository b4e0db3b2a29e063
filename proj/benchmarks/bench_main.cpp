#include <benchmark/benchmark.h>

#include <random>

#include "schmidt_forge/ppt_sdp.hpp"
#include "schmidt_forge/schmidt.hpp"
#include "schmidt_forge/spectral_analytic.hpp"
#include "schmidt_forge/states.hpp"

using namespace schmidt_forge;

static void BM_PartialTranspose(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto op = sigma_0(d, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(partial_transpose(op));
}
BENCHMARK(BM_PartialTranspose)->Arg(4)->Arg(8)->Arg(16);

static void BM_HermitianEig(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto op = partial_transpose(sigma_0(d, 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(op));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(8);

static void BM_NormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto psi = random_antisymmetric_state(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(youla_normal_form(psi));
}
BENCHMARK(BM_NormalForm)->Arg(8)->Arg(16);

static void BM_SolvePppt(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto rho = psi_0a(d).projector();
  for (auto _ : state) benchmark::DoNotOptimize(solve_pppt(PpptProblem(rho)));
}
BENCHMARK(BM_SolvePppt)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_DeterminantDirect(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(determinant_direct(d, 0.3, -0.7, 1.1));
}
BENCHMARK(BM_DeterminantDirect)->Arg(12);

static void BM_DeterminantRecurrence(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(determinant_recurrence(d, 0.3, -0.7, 1.1));
}
BENCHMARK(BM_DeterminantRecurrence)->Arg(12);

static void BM_DeterminantClosedForm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(determinant_closed_form(d, 0.3, -0.7, 1.1));
}
BENCHMARK(BM_DeterminantClosedForm)->Arg(12);

static void BM_DeterminantExact(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Rational a(3, 10), b(-7, 10), c(11, 10);
  for (auto _ : state) benchmark::DoNotOptimize(determinant_direct(d, a, b, c));
}
BENCHMARK(BM_DeterminantExact)->Arg(12);
BENCHMARK_MAIN();
