#include <benchmark/benchmark.h>

#include "mapflock/association.hpp"
#include "mapflock/network.hpp"
#include "mapflock/simulator.hpp"

using namespace mapflock;

namespace {

World scenario(int maps) {
  ScenarioConfig c;
  c.map_count = maps;
  Rng rng(c.seed);
  return generate_scenario(c, rng);
}

}  // namespace

static void BM_Step(benchmark::State& state) {
  ScenarioConfig c;
  c.map_count = static_cast<int>(state.range(0));
  World w = scenario(c.map_count);
  for (auto _ : state) benchmark::DoNotOptimize(step(w, c));
}
BENCHMARK(BM_Step)->Arg(40)->Arg(100)->Arg(200);

static void BM_AssignMsds(benchmark::State& state) {
  const ScenarioConfig c;
  const World w = scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assign_msds(w.msds, w.maps, w.clusters, c.control.rho, c.control.eta, c.control.r));
  }
}
BENCHMARK(BM_AssignMsds)->Arg(40)->Arg(100)->Arg(200);

static void BM_Fiedler(benchmark::State& state) {
  const ScenarioConfig c;
  const World w = scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fiedler_value(build_graph(w.maps, c.control.r)));
}
BENCHMARK(BM_Fiedler)->Arg(40)->Arg(100)->Arg(200);
BENCHMARK_MAIN();
