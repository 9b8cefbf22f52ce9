#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cc/summarize.hpp"

namespace {

// Random points on a line; distance is the absolute difference, scaled into [0, 1].
cc::DistanceMatrix line_sample(std::size_t n) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.5, 0.1);
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  cc::DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, std::min(1.0, std::abs(x[i] - x[j])));
  return d;
}

void BM_DetectModes(benchmark::State& state) {
  const auto d = line_sample(static_cast<std::size_t>(state.range(0)));
  const auto grid = cc::default_epsilon_grid();
  for (auto _ : state) benchmark::DoNotOptimize(cc::detect_modes(d, grid).mode_indices.size());
}
BENCHMARK(BM_DetectModes)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HpdRegion(benchmark::State& state) {
  const auto d = line_sample(1000);
  const std::vector<std::size_t> modes{0, 1, 2};
  const double zeta = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cc::hpd_region(d, modes, 0.95, zeta).members.size());
}
BENCHMARK(BM_HpdRegion)->Arg(1000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace
