#include "mhc/multitrip.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "mhc/errors.hpp"
#include "mhc/sync_scheduler.hpp"

namespace mhc {

std::vector<std::vector<int>> split_trips(const std::vector<int>& route,
                                          const Instance& inst) {
  std::vector<std::vector<int>> trips;
  if (route.empty()) return trips;
  // A resupply position is the last node of a full load, so the trip keeps it.
  std::vector<int> cuts = resupply_positions(route, inst);
  std::size_t begin = 0;
  for (int cut : cuts) {
    trips.emplace_back(route.begin() + begin, route.begin() + cut + 1);
    begin = static_cast<std::size_t>(cut) + 1;
  }
  trips.emplace_back(route.begin() + begin, route.end());
  return trips;
}

MtSolution split_all(const Routes& routes, const Instance& inst) {
  MtSolution sol;
  sol.trips.reserve(routes.size());
  for (const auto& route : routes) sol.trips.push_back(split_trips(route, inst));
  return sol;
}

namespace {

// Depot-to-depot duration of one trip: legs plus services, no reload.
double trip_duration(const std::vector<int>& trip, const Instance& inst) {
  double d = 0;
  int prev = 0;
  for (int node : trip) {
    d += inst.mhc_travel[prev][node] + inst.service_time[node];
    prev = node;
  }
  return d + inst.mhc_travel[prev][0];
}

double trip_length(const std::vector<int>& trip, const Instance& inst) {
  double d = 0;
  int prev = 0;
  for (int node : trip) {
    d += inst.mhc_travel[prev][node];
    prev = node;
  }
  return d + inst.mhc_travel[prev][0];
}

// Synchronized solver shaped for the head-to-head study: full truck
// simulation, but the search objective is the latest depot return alone, the
// same target the multi-trip side minimizes.
class LatestArrivalEvaluator : public Evaluator {
 public:
  explicit LatestArrivalEvaluator(const Instance& inst) : inst_(&inst) {}

  Evaluation evaluate(const Routes& routes) override {
    ScheduleResult res = schedule(routes, *inst_);
    Evaluation ev;
    ev.objective = res.schedule.latest_arrival;
    const std::size_t sz = inst_->nodes.size();
    ev.is_resupply.assign(sz, 0);
    ev.has_wait.assign(sz, 0);
    for (int node : res.solution.resupply_nodes) {
      ev.is_resupply[node] = 1;
      if (res.schedule.mhc_wait[node] > 1e-9 || res.schedule.truck_wait[node] > 1e-9) {
        ev.has_wait[node] = 1;
      }
    }
    double worst = -1;
    for (std::size_t m = 0; m < routes.size(); ++m) {
      if (routes[m].empty()) continue;
      int last = routes[m].back();
      double back = res.schedule.completion[last] + res.schedule.mhc_wait[last] +
                    inst_->mhc_travel[last][0];
      if (back > worst) {
        worst = back;
        ev.longest_route = static_cast<int>(m);
      }
    }
    return ev;
  }

  double route_cost(const std::vector<int>& route) const override {
    return sync_free_route_cost(route, *inst_);
  }

 private:
  const Instance* inst_;
};

}  // namespace

MtSchedule mt_schedule(const MtSolution& sol, const Instance& inst) {
  const std::size_t fleet = sol.trips.size();
  MtSchedule sched;
  sched.depart.resize(fleet);
  sched.finish.resize(fleet);
  sched.reload_wait.resize(fleet);

  for (std::size_t m = 0; m < fleet; ++m) {
    for (const auto& trip : sol.trips[m]) {
      double load = 0;
      for (int node : trip) load += inst.total_demand(node);
      if (load > inst.capacity + 1e-9) {
        throw ValidationError("trip demand exceeds vehicle capacity");
      }
      sched.total_distance += trip_length(trip, inst);
    }
    sched.depart[m].assign(sol.trips[m].size(), 0.0);
    sched.finish[m].assign(sol.trips[m].size(), 0.0);
    sched.reload_wait[m].assign(sol.trips[m].size(), 0.0);
  }

  // (depot arrival, vehicle) of vehicles waiting for the bay; processing in
  // ascending order is first-come-first-served because every arrival created
  // later is no earlier than the reload that creates it.
  using Event = std::pair<double, std::size_t>;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> bay;
  std::vector<std::size_t> next_trip(fleet, 0);

  for (std::size_t m = 0; m < fleet; ++m) {
    if (sol.trips[m].empty()) continue;
    sched.depart[m][0] = 0;
    sched.finish[m][0] = trip_duration(sol.trips[m][0], inst);
    next_trip[m] = 1;
    if (sol.trips[m].size() > 1) {
      bay.push({sched.finish[m][0], m});
    } else {
      sched.latest_arrival = std::max(sched.latest_arrival, sched.finish[m][0]);
    }
  }

  double bay_free = 0;
  while (!bay.empty()) {
    auto [arrival, m] = bay.top();
    bay.pop();
    double start = std::max(bay_free, arrival);
    bay_free = start + inst.resupply_time;
    std::size_t t = next_trip[m];
    sched.reload_wait[m][t] = start - arrival;
    sched.depart[m][t] = bay_free;
    sched.finish[m][t] = bay_free + trip_duration(sol.trips[m][t], inst);
    next_trip[m] = t + 1;
    if (t + 1 < sol.trips[m].size()) {
      bay.push({sched.finish[m][t], m});
    } else {
      sched.latest_arrival = std::max(sched.latest_arrival, sched.finish[m][t]);
    }
  }
  return sched;
}

Evaluation MtEvaluator::evaluate(const Routes& routes) {
  MtSolution sol = split_all(routes, *inst_);
  MtSchedule sched = mt_schedule(sol, *inst_);
  Evaluation ev;
  ev.objective = sched.latest_arrival;
  ev.is_resupply.assign(inst_->nodes.size(), 0);
  ev.has_wait.assign(inst_->nodes.size(), 0);
  double worst = -1;
  for (std::size_t m = 0; m < sol.trips.size(); ++m) {
    const auto& trips = sol.trips[m];
    for (std::size_t t = 1; t < trips.size(); ++t) {
      if (trips[t].empty()) continue;
      ev.is_resupply[trips[t].front()] = 1;
      if (sched.reload_wait[m][t] > 1e-9) ev.has_wait[trips[t].front()] = 1;
    }
    if (!trips.empty()) {
      double back = sched.finish[m].back();
      if (back > worst) {
        worst = back;
        ev.longest_route = static_cast<int>(m);
      }
    }
  }
  return ev;
}

double MtEvaluator::route_cost(const std::vector<int>& route) const {
  auto trips = split_trips(route, *inst_);
  double d = 0;
  for (const auto& trip : trips) d += trip_duration(trip, *inst_);
  if (trips.size() > 1) d += inst_->resupply_time * (trips.size() - 1);
  return d;
}

MtRunResult solve_multitrip(const Instance& inst, const AlnsConfig& cfg) {
  MtEvaluator ev(inst);
  EngineResult engine = run_engine(inst, cfg, ev);
  MtRunResult result;
  result.best = split_all(engine.best_routes, inst);
  result.times = mt_schedule(result.best, inst);
  result.best_routes = std::move(engine.best_routes);
  result.best_objective = engine.best_objective;
  result.construction_objective = engine.construction_objective;
  result.stats = std::move(engine.stats);
  result.trace = std::move(engine.trace);
  return result;
}

GapRow gaps(double mt_distance, double sync_distance, double mt_latest,
            double sync_latest) {
  GapRow row;
  row.mt_distance = mt_distance;
  row.sync_distance = sync_distance;
  row.mt_latest = mt_latest;
  row.sync_latest = sync_latest;
  row.distance_gap = (sync_distance - mt_distance) / mt_distance * 100.0;
  row.arrival_gap = (mt_latest - sync_latest) / mt_latest * 100.0;
  return row;
}

GapRow compare(const Instance& inst, const AlnsConfig& cfg) {
  LatestArrivalEvaluator sync_ev(inst);
  EngineResult sync = run_engine(inst, cfg, sync_ev);
  ScheduleResult settled = schedule(sync.best_routes, inst);
  MtRunResult mt = solve_multitrip(inst, cfg);
  return gaps(mt.times.total_distance, total_distance(settled.solution, inst),
              mt.times.latest_arrival, settled.schedule.latest_arrival);
}

}  // namespace mhc
