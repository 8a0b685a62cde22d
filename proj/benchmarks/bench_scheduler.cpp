#include <benchmark/benchmark.h>

#include <cstdint>

#include <mhc/construction.hpp>
#include <mhc/instance.hpp>
#include <mhc/solution.hpp>
#include <mhc/sync_scheduler.hpp>

namespace {

mhc::Instance make_instance(int n, int num_mhc, int products) {
  mhc::GeneratorConfig g;
  g.n_nodes = n;
  g.num_mhc = num_mhc;
  g.num_products = products;
  g.seed = 7;
  return mhc::generate_instance(g, mhc::synth_coordinates(g));
}

void bm_schedule(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  int num_mhc = static_cast<int>(state.range(1));
  mhc::Instance inst = make_instance(n, num_mhc, 2);
  mhc::Routes routes = mhc::initial_solution(inst, 1).solution.routes;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhc::schedule(routes, inst));
  }
}
BENCHMARK(bm_schedule)->Args({30, 3})->Args({100, 8});

void bm_plan_loads(benchmark::State& state) {
  mhc::Instance inst = make_instance(100, 8, 2);
  mhc::Routes routes = mhc::initial_solution(inst, 1).solution.routes;
  for (auto _ : state) {
    for (const auto& route : routes) {
      benchmark::DoNotOptimize(mhc::plan_loads(route, inst));
    }
  }
}
BENCHMARK(bm_plan_loads);

void bm_validate(benchmark::State& state) {
  mhc::Instance inst = make_instance(100, 8, 2);
  mhc::ScheduleResult sr = mhc::schedule(mhc::initial_solution(inst, 1).solution.routes, inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhc::validate_solution(inst, sr.solution, sr.schedule));
  }
}
BENCHMARK(bm_validate);

}  // namespace

BENCHMARK_MAIN();
