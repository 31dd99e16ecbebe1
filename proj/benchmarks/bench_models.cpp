#include <benchmark/benchmark.h>

#include "belpm/belpm_model.hpp"
#include "belpm/classic_bel.hpp"
#include "belpm/series.hpp"
#include "belpm/wknn.hpp"

namespace {

const belpm::EmbeddedDataset& train_pairs() {
  static const auto data = belpm::embed(belpm::gen_mackey_glass(503, 17, 1.2, 100), 3, 1);
  return data;
}

void BM_BelpmTrain(benchmark::State& state) {
  belpm::BelpmConfig config;
  config.epochs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto m = belpm::train(train_pairs(), config);
    benchmark::DoNotOptimize(m.cm.w1);
  }
}
BENCHMARK(BM_BelpmTrain)->Arg(0)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_BelpmPredict(benchmark::State& state) {
  const auto model = belpm::train(train_pairs(), belpm::BelpmConfig{});
  const auto q = train_pairs().input(123);
  for (auto _ : state) benchmark::DoNotOptimize(belpm::predict(model, q));
}
BENCHMARK(BM_BelpmPredict);

void BM_WknnPredict(benchmark::State& state) {
  const belpm::WknnModel model(train_pairs(), 2);
  const auto q = train_pairs().input(123);
  for (auto _ : state) benchmark::DoNotOptimize(belpm::wknn_predict(model, q));
}
BENCHMARK(BM_WknnPredict);

void BM_ClassicBelTrain(benchmark::State& state) {
  const belpm::ClassicBelModel start(3, 0.1, 0.1, belpm::OrbitofrontalSignal::ModelOutput);
  for (auto _ : state) benchmark::DoNotOptimize(belpm::bel_train(start, train_pairs(), 10).w);
}
BENCHMARK(BM_ClassicBelTrain);

}  // namespace
BENCHMARK_MAIN();
