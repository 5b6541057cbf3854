#include <benchmark/benchmark.h>

#include <random>

#include "rips/complex.hpp"
#include "rips/constructions.hpp"
#include "rips/homology.hpp"

using namespace rips;

namespace {

PointCloud random_cloud(std::size_t n, std::size_t dim, double side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  const ThresholdPolicy policy;
  PointCloud c(dim);
  std::vector<double> p(dim);
  while (c.size() < n) {
    for (double& x : p) x = u(rng);
    bool ok = true;
    for (std::size_t i = 0; i < c.size() && ok; ++i)
      ok = classify_squared_distance(squared_distance(p, c.point(i)), policy) != Proximity::kAmbiguous;
    if (ok) c.add_point(p);
  }
  return c;
}

void BM_ProximityGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PointCloud c = random_cloud(n, 3, 4.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(proximity_graph(c, {}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProximityGraph)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_BuildRips(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PointCloud c = random_cloud(n, 2, 3.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_rips(c, {}, 3));
}
BENCHMARK(BM_BuildRips)->Arg(32)->Arg(64)->Arg(128);

void BM_BettiS2(benchmark::State& state) {
  S2Construction s = construct_s2(static_cast<std::size_t>(state.range(0)));
  SimplicialComplex c = build_rips(s.cloud, {}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(c, 2));
}
BENCHMARK(BM_BettiS2)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_BettiOddSphere(benchmark::State& state) {
  OddSphereConstruction s = construct_s2km1(static_cast<std::size_t>(state.range(0)), 2);
  SimplicialComplex c = build_rips(s.cloud, {}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(c, 3));
}
BENCHMARK(BM_BettiOddSphere)->Arg(12)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_CycleBasis(benchmark::State& state) {
  PointCloud c = random_cloud(static_cast<std::size_t>(state.range(0)), 2, 4.0, 3);
  SimplicialComplex k = build_rips(c, {}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(h1_cycle_basis(k));
}
BENCHMARK(BM_CycleBasis)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
