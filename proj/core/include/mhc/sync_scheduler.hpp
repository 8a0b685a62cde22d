#pragma once

#include <vector>

#include "mhc/solution.hpp"

namespace mhc {

// Load decisions for one route under the greedy prefix-fill policy: the MHC
// leaves the depot with exactly the demand of the longest feasible route
// prefix, runs dry at the prefix boundary and is refilled there with the
// demand of the next prefix.
struct LoadPlan {
  std::vector<double> initial_load;  // per product
  struct Refill {
    int position;                    // index in the route
    int node;
    std::vector<double> amounts;     // per product
  };
  std::vector<Refill> refills;       // in route order
};

LoadPlan plan_loads(const std::vector<int>& route, const Instance& inst);

// Positions where the prefix-fill policy forces a resupply; cheap version of
// plan_loads for cost estimates.
std::vector<int> resupply_positions(const std::vector<int>& route, const Instance& inst);
int count_resupply_points(const std::vector<int>& route, const Instance& inst);

// Service completion times ignoring the truck entirely (waits zero, one
// resupply duration at each refill position). Indexed by node id.
std::vector<double> provisional_completion(const Routes& routes,
                                           const std::vector<LoadPlan>& plans,
                                           const Instance& inst);

// Resupply nodes sorted by ascending provisional completion, ties by
// (route, position). This is the truck's initial visiting order.
std::vector<int> order_truck(const Routes& routes, const std::vector<LoadPlan>& plans,
                             const std::vector<double>& completion);

// Simulates the truck along truck_order and propagates MHC waits downstream.
// truck_order must visit each route's resupply nodes in route order; the
// interleaving across routes is free.
Schedule settle(const Routes& routes, const std::vector<int>& truck_order,
                const std::vector<LoadPlan>& plans, const Instance& inst);

struct ScheduleResult {
  Solution solution;
  Schedule schedule;
  int passes = 0;  // settle calls until the truck order stabilized
};

// Full evaluation of a set of routes: plan loads, order the truck, settle,
// and re-settle until the ascending-completion order is a fixed point (cap:
// resupply count + 2 passes; the schedule is flagged unstabilized beyond it).
ScheduleResult schedule(const Routes& routes, const Instance& inst);

}  // namespace mhc
