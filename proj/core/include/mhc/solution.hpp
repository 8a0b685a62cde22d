#pragma once

#include <string>
#include <vector>

#include "mhc/instance.hpp"

namespace mhc {

using Routes = std::vector<std::vector<int>>;

// Routing decisions only; all timing lives in Schedule. Routes are customer id
// sequences, the depot endpoints are implicit. truck_route is the visiting
// order of the resupply truck and must be a permutation of resupply_nodes.
struct Solution {
  Routes routes;
  std::vector<int> resupply_nodes;  // ascending ids
  std::vector<int> truck_route;
};

// Settled timing and inventory state, indexed by node id (entry 0 unused).
// completion[i] is the service completion time at i; truck_arrival, mhc_wait
// and truck_wait are meaningful at resupply nodes.
struct Schedule {
  std::vector<double> completion;
  std::vector<double> truck_arrival;
  std::vector<double> mhc_wait;
  std::vector<double> truck_wait;
  Matrix inventory_on_arrival;  // [node][product]
  Matrix resupplied;            // [node][product]
  double latest_arrival = 0;    // last depot return over all MHCs
  double truck_total_time = 0;  // truck travel only, waits excluded
  bool stabilized = true;       // truck-order fixed point reached
};

// Constraint families of the underlying flow model, numbered as in the
// feasibility reports.
enum class Constraint : int {
  visit_once = 2,       // every customer served exactly once
  mhc_flow = 3,
  fleet_size = 4,       // exactly num_mhc nonempty routes
  truck_flow = 5,
  resupply_link = 6,    // truck visits exactly the resupply nodes
  single_truck = 7,
  mhc_time = 8,         // service completion recursion (also covers 9)
  truck_time = 10,      // truck arrival recursion (also covers 11)
  mhc_wait = 12,        // w >= truck arrival - completion
  truck_wait = 13,      // u >= completion - truck arrival
  latest_arrival = 14,
  inventory = 15,       // on-board inventory recursion (also covers 16)
  demand_cover = 17,    // arrival stock covers demand
  capacity = 18,
  refill_link = 19,     // refills only at resupply nodes, within capacity
};

std::string constraint_name(Constraint c);

struct Violation {
  Constraint constraint;
  std::string context;
  double magnitude = 0;
};

struct FeasibilityReport {
  bool passed = true;
  std::vector<Violation> violations;

  bool has(Constraint c) const;
};

// latest_arrival + truck_total_time
double objective(const Schedule& sched);

// Closed MHC tour lengths in the t metric plus the closed truck tour in the
// r metric.
double total_distance(const Solution& sol, const Instance& inst);

// Checks the solution and schedule against every constraint family above with
// tolerance 1e-6. Structurally malformed input (ids out of range, depot inside
// a route, size mismatches) throws ValidationError instead.
FeasibilityReport validate_solution(const Instance& inst, const Solution& sol,
                                    const Schedule& sched);

// Solution + schedule round-trip document.
std::string solution_to_json(const Solution& sol, const Schedule& sched);
std::pair<Solution, Schedule> solution_from_json(const std::string& text);
void save_solution(const Solution& sol, const Schedule& sched, const std::string& path);
std::pair<Solution, Schedule> load_solution(const std::string& path);

}  // namespace mhc
