#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "belpm/adaptive_network.hpp"
#include "belpm/series.hpp"

namespace {

belpm::EmbeddedDataset mackey_glass_pairs(std::size_t n) {
  return belpm::embed(belpm::gen_mackey_glass(n + 3, 17, 1.2, 100), 3, 1);
}

void BM_Forward(benchmark::State& state) {
  const auto data = mackey_glass_pairs(static_cast<std::size_t>(state.range(0)));
  const belpm::AdaptiveNetwork net(data, 8, belpm::KernelKind::Exponential);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.22, 1.27);
  const std::vector<double> q{u(rng), u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(q).output);
}
BENCHMARK(BM_Forward)->Arg(100)->Arg(500)->Arg(2000);

void BM_LooGradient(benchmark::State& state) {
  const auto data = mackey_glass_pairs(static_cast<std::size_t>(state.range(0)));
  const belpm::AdaptiveNetwork net(data, 8, belpm::KernelKind::InverseQuadratic);
  for (auto _ : state) benchmark::DoNotOptimize(belpm::grad_bandwidths(net, data));
}
BENCHMARK(BM_LooGradient)->Arg(100)->Arg(500);

void BM_TrainBandwidths(benchmark::State& state) {
  const auto data = mackey_glass_pairs(500);
  const belpm::AdaptiveNetwork net(data, 8, belpm::KernelKind::Exponential);
  for (auto _ : state) {
    auto r = belpm::train_bandwidths_sd(net, data, 0.05, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(r.loss_trace.back());
  }
}
BENCHMARK(BM_TrainBandwidths)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
