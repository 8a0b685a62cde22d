#include <benchmark/benchmark.h>

#include <cstdint>

#include <mhc/alns.hpp>
#include <mhc/construction.hpp>
#include <mhc/instance.hpp>
#include <mhc/rng.hpp>

namespace {

mhc::Instance make_instance(int n, int num_mhc) {
  mhc::GeneratorConfig g;
  g.n_nodes = n;
  g.num_mhc = num_mhc;
  g.seed = 7;
  return mhc::generate_instance(g, mhc::synth_coordinates(g));
}

void bm_destroy_repair(benchmark::State& state) {
  mhc::DestroyOp op = static_cast<mhc::DestroyOp>(state.range(0));
  mhc::Instance inst = make_instance(30, 3);
  mhc::SyncEvaluator ev(inst);
  mhc::Routes routes = mhc::initial_solution(inst, 1).solution.routes;
  mhc::Evaluation eval = ev.evaluate(routes);
  mhc::HistoryTable history;
  history.update(routes, eval.objective);
  mhc::AlnsConfig cfg;
  mhc::Rng rng(3);
  for (auto _ : state) {
    mhc::DestroyResult res = mhc::destroy(op, routes, eval, history, inst, cfg, rng);
    benchmark::DoNotOptimize(
        mhc::repair(mhc::RepairOp::greedy, std::move(res.partial), std::move(res.removed), ev, rng));
  }
}
BENCHMARK(bm_destroy_repair)->DenseRange(1, mhc::kNumDestroy);

void bm_run_short(benchmark::State& state) {
  mhc::Instance inst = make_instance(30, 3);
  mhc::AlnsConfig cfg;
  cfg.iter_max = 500;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhc::run(inst, cfg));
  }
}
BENCHMARK(bm_run_short)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
