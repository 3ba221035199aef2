#include <benchmark/benchmark.h>

#include "tailsum/combinatorics.hpp"
#include "tailsum/domains.hpp"
#include "tailsum/montecarlo.hpp"
#include "tailsum/tail_estimators.hpp"

namespace {

tailsum::SortedSample pareto_sample(std::size_t n) {
  return tailsum::sample_iid(tailsum::TestDistribution::pareto(1.0), 1, n);
}

void BM_TNaive(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<int>(state.range(1));
  const auto sample = pareto_sample(200);
  const auto window = tailsum::TailWindow::make(200, k);
  for (auto _ : state) benchmark::DoNotOptimize(tailsum::t_naive(sample, window, p));
}
BENCHMARK(BM_TNaive)->Args({20, 3})->Args({40, 3})->Args({40, 4})->Args({60, 4});

void BM_TFast(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<int>(state.range(1));
  const auto sample = pareto_sample(100000);
  const auto window = tailsum::TailWindow::make(100000, k);
  for (auto _ : state) benchmark::DoNotOptimize(tailsum::t_fast(sample, window, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TFast)->Args({40, 4})->Args({1000, 4})->Args({10000, 4})->Args({1000, 8});

void BM_SampleUpper(benchmark::State& state) {
  const auto dist = tailsum::TestDistribution::pareto(1.0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tailsum::sample_upper(dist, ++seed, 100000, 1001));
}
BENCHMARK(BM_SampleUpper);

void BM_BetaTable(benchmark::State& state) {
  const auto size = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tailsum::NumberTable::generate(tailsum::Family::TypeI, size, size));
  }
}
BENCHMARK(BM_BetaTable)->Arg(10)->Arg(30);

void BM_QuadratureOracle(benchmark::State& state) {
  const tailsum::QuadratureOracleConfig config{static_cast<int>(state.range(0)), 60.0};
  for (auto _ : state) benchmark::DoNotOptimize(tailsum::quadrature_oracle_a(3, 4, config));
}
BENCHMARK(BM_QuadratureOracle)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
