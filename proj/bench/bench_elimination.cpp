#include <benchmark/benchmark.h>

#include <random>

#include "foliacoh/cartan.hpp"
#include "foliacoh/fixtures.hpp"
#include "foliacoh/kernels.hpp"

using namespace foliacoh;

namespace {

Matrix random_matrix(std::size_t n, std::size_t rank_cap, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  Matrix a(n, rank_cap), b(rank_cap, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rank_cap; ++j) a(i, j) = Rational(entry(rng), den(rng));
  for (std::size_t i = 0; i < rank_cap; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = Rational(entry(rng), den(rng));
  return kernels::multiply_serial(a, b);
}

void BM_EchelonSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(n, n * 3 / 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::row_echelon_serial(m));
  state.SetComplexityN(state.range(0));
}

void BM_EchelonParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(n, n * 3 / 4, 1);
  kernels::set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::row_echelon_parallel(m));
  kernels::set_thread_count(0);
  state.SetComplexityN(state.range(0));
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 2), b = random_matrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_serial(a, b));
}

void BM_MultiplyParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 2), b = random_matrix(n, n, 3);
  kernels::set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_parallel(a, b));
  kernels::set_thread_count(0);
}

void BM_EquivariantTrivial(benchmark::State& state) {
  const auto s = fixtures::trivial_action(2, {1, 0, 2, 1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(equivariant_cohomology(s, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_EchelonSerial)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EchelonParallel)->ArgsProduct({{32, 64, 128}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MultiplySerial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyParallel)->ArgsProduct({{64, 128}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EquivariantTrivial)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
