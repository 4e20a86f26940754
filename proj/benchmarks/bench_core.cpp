#include <benchmark/benchmark.h>

#include <random>

#include "cml/arith.hpp"
#include "cml/arithfn.hpp"
#include "cml/closeness.hpp"
#include "cml/goldbach.hpp"
#include "cml/models.hpp"

using namespace cml;

static void BM_SievePrimes(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimes)->RangeMultiplier(10)->Range(100'000, 10'000'000)->Unit(benchmark::kMillisecond);

static ArithFn random_fn(std::int64_t start, std::int64_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(len));
  for (auto& x : v) x = u(rng);
  return ArithFn(start, std::move(v));
}

static void BM_Convolve(benchmark::State& state) {
  const auto path = state.range(1) == 0 ? ConvolutionPath::kDirect : ConvolutionPath::kTransform;
  const ArithFn f = random_fn(1000, state.range(0), 1);
  const ArithFn g = random_fn(5000, state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, g, path));
  state.SetLabel(state.range(1) == 0 ? "direct" : "fft");
}
BENCHMARK(BM_Convolve)
    ->ArgsProduct({{1 << 8, 1 << 11, 1 << 14}, {0, 1}})
    ->Unit(benchmark::kMicrosecond);

static void BM_ConvolveLarge(benchmark::State& state) {
  const ArithFn f = random_fn(1, state.range(0), 3);
  const ArithFn g = random_fn(1, state.range(0), 4);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, g, ConvolutionPath::kTransform));
}
BENCHMARK(BM_ConvolveLarge)->RangeMultiplier(4)->Range(1 << 16, 1 << 20)->Unit(benchmark::kMillisecond);

static void BM_LambdaQWindow(benchmark::State& state) {
  const auto Q = static_cast<std::uint64_t>(state.range(0));
  const Window w{1'000'000, 1'100'000};
  for (auto _ : state) benchmark::DoNotOptimize(lambda_q_window(w, Q));
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_LambdaQWindow)->Arg(10)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_BetaSieveWeights(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0));
  const double level = desk_sieve_level(1e4, z);
  for (auto _ : state) benchmark::DoNotOptimize(beta_sieve_weights(level, z));
}
BENCHMARK(BM_BetaSieveWeights)->Arg(7)->Arg(10)->Arg(13)->Unit(benchmark::kMillisecond);

static void BM_SingularSeries(benchmark::State& state) {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1'000'000; n < 1'000'200; n += 2) ns.push_back(n);
  const auto q_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(singular_series_partial(ns, q_max));
}
BENCHMARK(BM_SingularSeries)->Arg(1000)->Arg(10'000)->Unit(benchmark::kMillisecond);

static void BM_PipelineDeskSmall(benchmark::State& state) {
  const auto config = preset_config("desk-small");
  const auto inputs = model_inputs(config);
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(config, inputs));
}
BENCHMARK(BM_PipelineDeskSmall)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
