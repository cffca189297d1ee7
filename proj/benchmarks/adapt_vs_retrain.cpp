// Per-step cost of adapting a trained model versus retraining on a sliding window.
#include <benchmark/benchmark.h>

#include <span>
#include <vector>

#include "nsfts/adaptive.hpp"
#include "nsfts/dataset.hpp"
#include "nsfts/metamodels.hpp"

namespace {

std::vector<double> stream(std::size_t length) {
  nsfts::DriftSpec s;
  s.kind = nsfts::DriftKind::IncrementalMean;
  s.seed = 42;
  s.length = length;
  return nsfts::generate(s).values;
}

void BM_Adapt(benchmark::State& state) {
  const auto y = stream(10000);
  nsfts::NsftsConfig config;
  config.fts.partitions = static_cast<std::size_t>(state.range(0));
  auto model = nsfts::train_nsfts(std::span(y).first(100), config);
  std::size_t t = 100;
  for (auto _ : state) {
    model.adapt(y[t]);
    benchmark::DoNotOptimize(model.forecast(y[t]));
    if (++t == y.size()) t = 100;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Adapt)->Arg(9)->Arg(35)->Arg(100);

void BM_TimeVariantRun(benchmark::State& state) {
  const auto y = stream(10000);
  nsfts::FtsConfig fts;
  fts.partitions = static_cast<std::size_t>(state.range(0));
  const nsfts::RetrainPolicy policy{100, 10};
  for (auto _ : state) benchmark::DoNotOptimize(nsfts::run_time_variant(y, policy, fts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(y.size() - policy.window));
}
BENCHMARK(BM_TimeVariantRun)->Arg(9)->Arg(35)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_NsftsRun(benchmark::State& state) {
  const auto y = stream(10000);
  nsfts::NsftsConfig config;
  config.fts.partitions = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto model = nsfts::train_nsfts(std::span(y).first(100), config);
    benchmark::DoNotOptimize(model.run_online(std::span(y).subspan(100)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(y.size() - 100));
}
BENCHMARK(BM_NsftsRun)->Arg(9)->Arg(35)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
