#include "mhc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mhc/errors.hpp"
#include "mhc/solution.hpp"

namespace mhc {

namespace {

void check_limits(int num_customers, int num_mhc, const OracleLimits& limits) {
  if (num_customers > limits.max_customers) {
    throw SizeError("exhaustive search limited to " +
                    std::to_string(limits.max_customers) + " customers, got " +
                    std::to_string(num_customers));
  }
  if (num_mhc > limits.max_mhc) {
    throw SizeError("exhaustive search limited to " + std::to_string(limits.max_mhc) +
                    " vehicles, got " + std::to_string(num_mhc));
  }
  if (num_customers < 1) throw ValidationError("no customers to route");
  if (num_mhc < 1 || num_mhc > num_customers) {
    throw ValidationError("fleet size must be between 1 and the customer count");
  }
}

// Every product of per-group permutations for one partition, odometer style.
void emit_orderings(std::vector<std::vector<int>>& groups,
                    const std::function<void(const Routes&)>& fn) {
  for (auto& g : groups) std::sort(g.begin(), g.end());
  while (true) {
    fn(groups);
    std::size_t b = 0;
    while (b < groups.size() &&
           !std::next_permutation(groups[b].begin(), groups[b].end())) {
      ++b;  // this group wrapped around, carry into the next
    }
    if (b == groups.size()) return;
  }
}

}  // namespace

namespace {

// Restricted growth strings enumerate set partitions exactly once: a[i] is
// the group of customer i+1 and never exceeds max(a[0..i-1]) + 1.
void enumerate_partitions(int i, int n, int k, int groups_so_far, std::vector<int>& a,
                          const std::function<void(const Routes&)>& fn) {
  if (groups_so_far + (n - i) < k) return;  // cannot still open k groups
  if (i == n) {
    std::vector<std::vector<int>> groups(k);
    for (int j = 0; j < n; ++j) groups[a[j]].push_back(j + 1);
    emit_orderings(groups, fn);
    return;
  }
  int hi = std::min(groups_so_far, k - 1);
  for (int v = 0; v <= hi; ++v) {
    a[i] = v;
    enumerate_partitions(i + 1, n, k, std::max(groups_so_far, v + 1), a, fn);
  }
}

}  // namespace

void for_each_routing(int num_customers, int num_mhc,
                      const std::function<void(const Routes&)>& fn,
                      const OracleLimits& limits) {
  check_limits(num_customers, num_mhc, limits);
  std::vector<int> a(num_customers, 0);
  enumerate_partitions(0, num_customers, num_mhc, 0, a, fn);
}

std::uint64_t count_routings(int num_customers, int num_mhc, const OracleLimits& limits) {
  std::uint64_t count = 0;
  for_each_routing(num_customers, num_mhc, [&count](const Routes&) { ++count; }, limits);
  return count;
}

namespace {

// Recursively interleaves the per-route resupply sequences and keeps the best
// settled schedule. Route order inside each sequence is preserved, which is
// exactly the set of orders settle() accepts.
struct OrderSearch {
  const Routes& routes;
  const std::vector<LoadPlan>& plans;
  const Instance& inst;
  std::vector<std::vector<int>> sequences;  // resupply nodes per route, in order
  std::vector<std::size_t> next;            // cursor per route
  std::vector<int> order;
  std::vector<int> best_order;
  Schedule best;
  double best_objective = std::numeric_limits<double>::infinity();
  int tried = 0;
  std::size_t total = 0;

  void search() {
    if (order.size() == total) {
      Schedule sched = settle(routes, order, plans, inst);
      ++tried;
      double obj = objective(sched);
      if (obj < best_objective) {
        best_objective = obj;
        best = sched;
        best_order = order;
      }
      return;
    }
    for (std::size_t m = 0; m < sequences.size(); ++m) {
      if (next[m] == sequences[m].size()) continue;
      order.push_back(sequences[m][next[m]]);
      ++next[m];
      search();
      --next[m];
      order.pop_back();
    }
  }
};

}  // namespace

ScheduleResult best_truck_order(const Routes& routes, const Instance& inst) {
  std::vector<LoadPlan> plans(routes.size());
  for (std::size_t m = 0; m < routes.size(); ++m) {
    plans[m] = plan_loads(routes[m], inst);
  }

  OrderSearch search{routes, plans, inst};
  search.sequences.resize(routes.size());
  for (std::size_t m = 0; m < routes.size(); ++m) {
    for (const auto& refill : plans[m].refills) {
      search.sequences[m].push_back(refill.node);
    }
    search.total += search.sequences[m].size();
  }
  search.next.assign(routes.size(), 0);
  search.search();

  ScheduleResult result;
  result.solution.routes = routes;
  result.solution.truck_route = search.best_order;
  for (const auto& plan : plans) {
    for (const auto& refill : plan.refills) {
      result.solution.resupply_nodes.push_back(refill.node);
    }
  }
  std::sort(result.solution.resupply_nodes.begin(), result.solution.resupply_nodes.end());
  result.schedule = search.best;
  result.passes = search.tried;
  return result;
}

ExactResult exact_solve(const Instance& inst, const OracleLimits& limits) {
  ExactResult result;
  result.objective = std::numeric_limits<double>::infinity();
  for_each_routing(
      inst.num_customers(), inst.num_mhc,
      [&](const Routes& routes) {
        ++result.routings;
        ScheduleResult sched = best_truck_order(routes, inst);
        double obj = objective(sched.schedule);
        if (obj < result.objective) {
          result.objective = obj;
          result.solution = sched.solution;
          result.schedule = sched.schedule;
        }
      },
      limits);
  if (result.routings == 0) throw ValidationError("no routing exists for this instance");
  return result;
}

}  // namespace mhc
