#include <benchmark/benchmark.h>

#include <random>

#include <g5/clifford.hpp>
#include <g5/geometry5.hpp>
#include <g5/random.hpp>

namespace {

void BM_Metric(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const g5::TrajectoryPtr tr = g5::random_trajectory(rng);
  const g5::Vec3 xp = g5::random_vec3(rng, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(g5::metric_upper(*tr, xp, 0.7));
}
BENCHMARK(BM_Metric);

void BM_Connection(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const g5::TrajectoryPtr tr = g5::random_trajectory(rng);
  const g5::Vec3 xp = g5::random_vec3(rng, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(g5::connection(*tr, xp, 0.7));
}
BENCHMARK(BM_Connection);

void BM_ApplyG5P(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const g5::TrajectoryPtr tr = g5::random_trajectory(rng);
  const g5::Event5 e = g5::random_event(rng);
  for (auto _ : state) benchmark::DoNotOptimize(g5::apply_g5p(*tr, e));
}
BENCHMARK(BM_ApplyG5P);

void BM_SpinConnection(benchmark::State& state) {
  std::mt19937_64 rng(8);
  const g5::TrajectoryPtr tr = g5::random_trajectory(rng);
  const g5::SpinGauge gauge = g5::SpinGauge::uniform(g5::Vec3::UnitZ(), 0.8);
  const g5::Vec3 xp = g5::random_vec3(rng, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(g5::spin_connection(*tr, xp, 0.7,
                                                 g5::FunfbeinGauge::Rotated,
                                                 g5::standard_rep(), &gauge));
}
BENCHMARK(BM_SpinConnection);

}  // namespace
