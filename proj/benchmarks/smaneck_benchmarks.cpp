#include <benchmark/benchmark.h>

#include "smaneck/scenario.hpp"

using namespace smaneck;

static void BM_StepSpring(benchmark::State& state) {
  const SmaMaterial m;
  const SpringGeometry g;
  const ThermalEnvironment env;
  auto s = initial_spring_state(env, 0.5);
  for (auto _ : state) {
    s = step_spring(m, g, env, s, 5.0, 1e-4, 1e-3);
    if (s.temperature > 380.0) s = initial_spring_state(env, 0.5);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_StepSpring);

static void BM_SolvePose(benchmark::State& state) {
  const Scenario sc = load_scenario(bundled_scenario_text());
  const UnitForces f{4.0, 0.5, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(solve_pose(sc.system, f, ArcPose{}));
}
BENCHMARK(BM_SolvePose);

// One second of the default 5 A run.
static void BM_SimulateOneSecond(benchmark::State& state) {
  Scenario sc = load_scenario(bundled_scenario_text());
  sc.sim.duration = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(sc.system, sc.sim));
}
BENCHMARK(BM_SimulateOneSecond)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
