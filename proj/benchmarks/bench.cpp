#include <benchmark/benchmark.h>

#include "longmem/longmem.hpp"

using namespace longmem;

static void BM_durbin_levinson(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const AutocovSeq s = exact_autocov(LongMemoryModel::fi(0.3), k);
  for (auto _ : state) benchmark::DoNotOptimize(durbin_levinson(s, k));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_durbin_levinson)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

static void BM_exact_autocov_fi(benchmark::State& state) {
  const auto m = LongMemoryModel::fi(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_autocov(m, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_exact_autocov_fi)->Range(1 << 10, 1 << 20);

static void BM_exact_autocov_farima(benchmark::State& state) {
  const auto m = LongMemoryModel::farima(0.3, {0.5}, {0.4});
  for (auto _ : state) benchmark::DoNotOptimize(exact_autocov(m, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_exact_autocov_farima)->Range(1 << 10, 1 << 16);

static void BM_truncation_excess(benchmark::State& state) {
  const auto m = LongMemoryModel::fi(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(truncation_excess(m, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_truncation_excess)->RangeMultiplier(4)->Range(100, 1600)->Unit(benchmark::kMillisecond);

static void BM_periodogram(benchmark::State& state) {
  NormalStream rng(1, 0);
  std::vector<double> y(static_cast<std::size_t>(state.range(0)));
  rng.fill(y);
  const SamplePath p(y);
  for (auto _ : state) benchmark::DoNotOptimize(periodogram(p));
}
BENCHMARK(BM_periodogram)->Arg(1000)->Arg(4096)->Arg(65536);

static void BM_gaussian_sample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SimulationPlan plan{exact_autocov(LongMemoryModel::fi(0.3), n), n, 1, 0, 0,
                            state.range(1) ? SimulationMethod::INNOVATIONS : SimulationMethod::CIRCULANT};
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_sample(plan));
}
BENCHMARK(BM_gaussian_sample)->Args({1024, 0})->Args({8192, 0})->Args({1024, 1});

static void BM_whittle_fit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SamplePath p = gaussian_sample({exact_autocov(LongMemoryModel::fi(0.3), n), n, 2, 0, 0, SimulationMethod::AUTO});
  for (auto _ : state) benchmark::DoNotOptimize(whittle_fit(p));
}
BENCHMARK(BM_whittle_fit)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
