#pragma once

#include <cstdint>
#include <functional>

#include "mhc/sync_scheduler.hpp"

namespace mhc {

// Exhaustive search is meant for verifying the heuristics on small inputs;
// these bounds keep the enumeration below a few seconds.
struct OracleLimits {
  int max_customers = 8;
  int max_mhc = 3;
};

// Calls fn once for every routing: every partition of customers 1..n into
// exactly num_mhc nonempty unlabeled groups, combined with every ordering
// inside each group. Throws SizeError beyond the limits.
void for_each_routing(int num_customers, int num_mhc,
                      const std::function<void(const Routes&)>& fn,
                      const OracleLimits& limits = {});

std::uint64_t count_routings(int num_customers, int num_mhc,
                             const OracleLimits& limits = {});

// Best schedule for fixed routes: tries every truck visiting order that keeps
// each route's resupply nodes in route order (other orders deadlock) and
// keeps the strictly best one, first found winning ties. `passes` reports how
// many orders were tried.
ScheduleResult best_truck_order(const Routes& routes, const Instance& inst);

struct ExactResult {
  Solution solution;
  Schedule schedule;
  double objective = 0;
  std::uint64_t routings = 0;  // routings enumerated
};

// Global minimum of latest arrival plus truck travel over every routing and
// every consistent truck order.
ExactResult exact_solve(const Instance& inst, const OracleLimits& limits = {});

}  // namespace mhc
