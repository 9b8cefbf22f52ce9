#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cc/metric.hpp"

namespace {

cc::Clustering random_labels(std::mt19937_64& rng, std::size_t n, int k) {
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> raw(n);
  for (auto& l : raw) l = pick(rng);
  return cc::canonicalize(raw);
}

void BM_ExactDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto k = static_cast<int>(state.range(0));
  const auto a = random_labels(rng, 5000, k), b = random_labels(rng, 5000, k);
  for (auto _ : state) benchmark::DoNotOptimize(cc::exact_distance(a, b).value);
}
BENCHMARK(BM_ExactDistance)->Arg(5)->Arg(11)->Arg(30)->Arg(100);

void BM_ApproxDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto k = static_cast<int>(state.range(0));
  const auto a = random_labels(rng, 5000, k), b = random_labels(rng, 5000, k);
  for (auto _ : state) benchmark::DoNotOptimize(cc::approx_distance(a, b).value);
}
BENCHMARK(BM_ApproxDistance)->Arg(5)->Arg(11)->Arg(30)->Arg(100);

void BM_DistanceMatrix(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<cc::Clustering> sample;
  for (int i = 0; i < state.range(0); ++i) sample.push_back(random_labels(rng, 500, 5));
  for (auto _ : state) benchmark::DoNotOptimize(cc::distance_matrix(sample, cc::MetricKind::approx).size());
}
BENCHMARK(BM_DistanceMatrix)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
