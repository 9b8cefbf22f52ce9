#include <benchmark/benchmark.h>

#include <vector>

#include "cc/sampler.hpp"
#include "cc/simulate.hpp"

namespace {

void BM_GibbsSweep(benchmark::State& state) {
  const std::vector<double> means{1, 2, 3, 4, 5};
  const auto sim = cc::generate_mixture_1d(static_cast<std::size_t>(state.range(0)), means, 0.25, 1);
  auto cfg = cc::ModelConfig::defaults_for(sim.data);
  cfg.max_components = static_cast<int>(state.range(1));
  cc::GibbsSampler sampler(cfg, sim.data, 7);
  for (auto _ : state) sampler.sweep();
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GibbsSweep)->Args({500, 15})->Args({5000, 30})->Unit(benchmark::kMicrosecond);

}  // namespace
