#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "logfol/lattice.hpp"
#include "logfol/lll.hpp"
#include "logfol/period.hpp"
#include "logfol/residue.hpp"

namespace {

logfol::IntegerMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> dist(-20, 20);
  logfol::IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

void BM_Hnf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(logfol::hnf(a));
}
BENCHMARK(BM_Hnf)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_Snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(logfol::snf(a));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8)->Arg(16);

void BM_IntegerKernel(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(k, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(logfol::integer_kernel(a));
}
BENCHMARK(BM_IntegerKernel)->Arg(8)->Arg(16)->Arg(64);

void BM_NumericRelations(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<logfol::Complex> values;
  for (std::size_t j = 0; j < k; ++j) values.emplace_back(std::sqrt(static_cast<double>(j + 2)), 0.0);
  values.emplace_back(1.0, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(logfol::numeric_relation_candidates(values, logfol::Integer(1000000), 1e-9));
}
BENCHMARK(BM_NumericRelations)->Arg(2)->Arg(4)->Arg(6);

void BM_LoopIntegral(benchmark::State& state) {
  const auto line = logfol::make_line_restriction({{0.0, 1.0}, {-1.0, 1.0}}, {1.0, -1.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(logfol::integrate_loop(line, 0.0, 0.45, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_LoopIntegral)->Arg(256)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
