#include <benchmark/benchmark.h>

#include "tailscope/classifier.hpp"
#include "tailscope/estimator.hpp"
#include "tailscope/simulation.hpp"

using namespace tailscope;

namespace {

const TonicDistribution& power_dist() {
  static const auto dist = TonicDistribution::power(2.0);
  return dist;
}

FrequencyTable sampled_table(std::int64_t n, std::uint64_t seed) {
  const auto draws = power_dist().sample(n, seed);
  return build_frequency_table(std::span<const std::int64_t>(draws));
}

}  // namespace

static void BM_Sample(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto draws = power_dist().sample(n, seed++);
    benchmark::DoNotOptimize(draws);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_BuildFrequencyTable(benchmark::State& state) {
  const auto draws = power_dist().sample(state.range(0), 7);
  for (auto _ : state) {
    auto table = build_frequency_table(std::span<const std::int64_t>(draws));
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_BuildFrequencyTable)->Arg(10000)->Arg(100000);

static void BM_TailProfile(benchmark::State& state) {
  const auto table = sampled_table(state.range(0), 11);
  const auto cfg = ClassifierConfig::defaults_for(table.n());
  for (auto _ : state) {
    auto profile = tail_profile(table, cfg.v1, cfg.v2);
    benchmark::DoNotOptimize(profile);
  }
}
BENCHMARK(BM_TailProfile)->Arg(2000)->Arg(10000)->Arg(100000);

static void BM_Classify(benchmark::State& state) {
  const auto table = sampled_table(state.range(0), 13);
  const auto cfg = ClassifierConfig::defaults_for(table.n());
  const auto profile = tail_profile(table, cfg.v1, cfg.v2);
  for (auto _ : state) {
    auto result = classify(profile, cfg);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_Classify)->Arg(2000)->Arg(10000);

static void BM_ExactTau(benchmark::State& state) {
  const auto& dist = power_dist();
  for (auto _ : state) {
    double tau = dist.exact_tau(state.range(0), 1e-10);
    benchmark::DoNotOptimize(tau);
  }
}
BENCHMARK(BM_ExactTau)->Arg(100)->Arg(10000);

static void BM_RunTrial(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto cfg = ClassifierConfig::defaults_for(n);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto result = run_trial(power_dist(), n, cfg, seed++);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_RunTrial)->Arg(2000)->Arg(10000);

BENCHMARK_MAIN();
