#pragma once

#include <vector>

#include "mhc/alns.hpp"
#include "mhc/instance.hpp"

namespace mhc {

// Baseline without the resupply truck: a vehicle that runs dry returns to the
// depot, reloads at a single shared bay, and continues with the rest of its
// route as a fresh trip.

// Cuts a route at the prefix-fill boundaries, so the trips cover exactly the
// stretches a synchronized vehicle would cover between refills.
std::vector<std::vector<int>> split_trips(const std::vector<int>& route,
                                          const Instance& inst);

struct MtSolution {
  // trips[vehicle][trip] is the stop sequence of one depot-to-depot loop.
  std::vector<std::vector<std::vector<int>>> trips;
};

MtSolution split_all(const Routes& routes, const Instance& inst);

struct MtSchedule {
  double latest_arrival = 0;                     // last final depot return
  double total_distance = 0;                     // all trip legs, all vehicles
  std::vector<std::vector<double>> depart;       // [vehicle][trip]
  std::vector<std::vector<double>> finish;       // [vehicle][trip] depot return
  std::vector<std::vector<double>> reload_wait;  // [vehicle][trip], 0 for trip 0
};

// Simulates the reload bay. Vehicles leave loaded at time zero, reload in
// first-come-first-served order (ties by vehicle index), one at a time.
MtSchedule mt_schedule(const MtSolution& sol, const Instance& inst);

// Adapter so the adaptive engine can drive the baseline: the objective is the
// latest depot return alone, trip boundaries play the resupply-node role and
// bay queueing plays the wait role.
class MtEvaluator : public Evaluator {
 public:
  explicit MtEvaluator(const Instance& inst) : inst_(&inst) {}
  Evaluation evaluate(const Routes& routes) override;
  double route_cost(const std::vector<int>& route) const override;

 private:
  const Instance* inst_;
};

struct MtRunResult {
  MtSolution best;
  MtSchedule times;
  Routes best_routes;
  double best_objective = 0;
  double construction_objective = 0;
  OperatorStats stats;
  std::vector<TraceRow> trace;
};

MtRunResult solve_multitrip(const Instance& inst, const AlnsConfig& cfg);

struct GapRow {
  double mt_distance = 0;
  double sync_distance = 0;
  double mt_latest = 0;
  double sync_latest = 0;
  double distance_gap = 0;  // percent the synchronized plan drives further
  double arrival_gap = 0;   // percent the synchronized plan finishes earlier
};

GapRow gaps(double mt_distance, double sync_distance, double mt_latest,
            double sync_latest);

// Runs both solvers on one instance with the same configuration, each
// minimizing the latest depot return (the head-to-head study objective).
GapRow compare(const Instance& inst, const AlnsConfig& cfg);

}  // namespace mhc
