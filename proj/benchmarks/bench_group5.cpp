#include <benchmark/benchmark.h>

#include <random>

#include <g5/group5.hpp>
#include <g5/random.hpp>

namespace {

void BM_Matrix5(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const g5::Boost5 b = g5::random_boost(rng);
  for (auto _ : state) benchmark::DoNotOptimize(g5::matrix5(b));
}
BENCHMARK(BM_Matrix5);

void BM_Compose(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const g5::Boost5 a = g5::random_boost(rng);
  const g5::Boost5 b = g5::random_boost(rng);
  for (auto _ : state) benchmark::DoNotOptimize(g5::compose(a, b));
}
BENCHMARK(BM_Compose);

void BM_ApplyG5(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const g5::Boost5 b = g5::random_boost(rng);
  const g5::Event5 e = g5::random_event(rng);
  for (auto _ : state) benchmark::DoNotOptimize(g5::apply_g5(b, e));
}
BENCHMARK(BM_ApplyG5);

}  // namespace
