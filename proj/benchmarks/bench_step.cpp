#include <benchmark/benchmark.h>

#include <g5/evolve.hpp>

namespace {

using namespace g5;

void BM_Step1D(benchmark::State& state) {
  const Grid g({static_cast<int>(state.range(0))}, {24.0});
  HamiltonianSpec h;
  LinearPotentialTerm lin;
  lin.w = Vec3(1.0, 0, 0);
  h.linear.push_back(lin);
  ScalarWavefunction s =
      make_gaussian(g, Vec3::Zero(), Vec3::Zero(), Vec3::Constant(0.5));
  Evolver ev(g, h, 1.0, 1.0, false);
  for (auto _ : state) ev.step(s, 1e-4);
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_Step1D)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Step2DRotating(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g({n, n}, {24.0, 24.0});
  HamiltonianSpec h;
  RotationTerm rot;
  rot.omega = Vec3(0, 0, 0.5);
  h.rotation.push_back(rot);
  ScalarWavefunction s =
      make_gaussian(g, Vec3(0.5, 0.5, 0), Vec3::Zero(), Vec3::Constant(1.0));
  Evolver ev(g, h, 1.0, 1.0, false);
  for (auto _ : state) ev.step(s, 1e-4);
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_Step2DRotating)->Arg(64)->Arg(128)->Arg(256);

void BM_Observables(benchmark::State& state) {
  const Grid g({1024}, {24.0});
  const ScalarWavefunction s =
      make_gaussian(g, Vec3::Zero(), Vec3(0.4, 0, 0), Vec3::Constant(0.5));
  for (auto _ : state) benchmark::DoNotOptimize(observables(s));
}
BENCHMARK(BM_Observables);

}  // namespace
