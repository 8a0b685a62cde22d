#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mhc/rng.hpp"
#include "mhc/sync_scheduler.hpp"

namespace mhc {

// Duration of one route with synchronization ignored: travel, service, and
// one resupply duration per forced refill. The truck and all waits are out.
using RouteCostFn = std::function<double(const std::vector<int>&)>;

double sync_free_route_cost(const std::vector<int>& route, const Instance& inst);

// Cheapest-insertion over a makespan objective: repeatedly evaluate every
// pending node at every position and take the global minimum. Ties go to the
// lowest (route, position, node), or to a uniformly drawn tied candidate when
// an rng is supplied; the makespan objective produces large tie plateaus, so
// randomized ties are what keeps repeated repairs from reproducing one
// arrangement. Whenever the number of pending nodes drops to the number of
// still-empty routes, insertions are restricted to empty routes so that no
// route stays unused.
void insert_greedy(Routes& routes, std::vector<int>& pending, const RouteCostFn& cost,
                   Rng* rng = nullptr);

// Regret insertion: place the node whose best position beats its (degree+1)-th
// best by the largest margin. With fewer candidate positions than that, the
// worst available one stands in. Ties as in insert_greedy, and the same
// empty-route guard.
void insert_regret(Routes& routes, std::vector<int>& pending, int degree,
                   const RouteCostFn& cost, Rng* rng = nullptr);

Routes cheapest_insertion_routes(int num_customers, int num_mhc, const RouteCostFn& cost);

// The construction heuristic: build all routes by cheapest insertion under
// the synchronization-free objective, then settle once.
ScheduleResult initial_solution(const Instance& inst, std::uint64_t seed);

// Synchronization-free objective of a partial solution after inserting node
// at (route, position). Throws std::out_of_range for an invalid position.
double insertion_cost(const Routes& partial, int node, int route, int position,
                      const Instance& inst);

}  // namespace mhc
