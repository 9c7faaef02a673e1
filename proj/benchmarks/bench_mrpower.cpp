#include <benchmark/benchmark.h>

#include "mrpower/mrpower.hpp"

using namespace mrpower;

static void BM_Entropy(benchmark::State& state) {
  SeededRng rng(1);
  const auto rho = random_density(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(rho));
}
BENCHMARK(BM_Entropy)->Arg(2)->Arg(4)->Arg(9)->Arg(16);

static void BM_CoheringPower(benchmark::State& state) {
  SeededRng rng(2);
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto e = random_channel(d, d, ChannelKind::General, rng);
  for (auto _ : state) benchmark::DoNotOptimize(measurement_cohering_power(e));
}
BENCHMARK(BM_CoheringPower)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

static void BM_ConversionCertificate(benchmark::State& state) {
  SeededRng rng(3);
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto e = random_channel(d, 2, ChannelKind::General, rng);
  for (auto _ : state) benchmark::DoNotOptimize(conversion_ent_lower_bound(e).gap);
}
BENCHMARK(BM_ConversionCertificate)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BruteForceOracle(benchmark::State& state) {
  SeededRng rng(4);
  const auto m = random_povm(2, 2, false, rng);
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(measurement_coherence_bruteforce(m, steps));
}
BENCHMARK(BM_BruteForceOracle)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_ClassifyChannel(benchmark::State& state) {
  SeededRng rng(5);
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto e = random_channel(d, d * d, ChannelKind::General, rng);
  for (auto _ : state) benchmark::DoNotOptimize(classify_channel(e).dio);
}
BENCHMARK(BM_ClassifyChannel)->Arg(2)->Arg(4)->Arg(9);

BENCHMARK_MAIN();
