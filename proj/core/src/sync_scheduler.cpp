#include "mhc/sync_scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "mhc/errors.hpp"

namespace mhc {

namespace {

// Longest prefix of route[from..] whose total demand fits into headroom.
// Returns one past the last covered position.
std::size_t prefix_end(const std::vector<int>& route, std::size_t from,
                       const Instance& inst, double headroom) {
  double used = 0;
  std::size_t p = from;
  while (p < route.size()) {
    double need = inst.total_demand(route[p]);
    if (used + need > headroom + 1e-9) break;
    used += need;
    ++p;
  }
  return p;
}

}  // namespace

LoadPlan plan_loads(const std::vector<int>& route, const Instance& inst) {
  const int K = inst.num_products;
  LoadPlan plan;
  plan.initial_load.assign(K, 0.0);

  for (int node : route) {
    if (inst.total_demand(node) > inst.capacity + 1e-9) {
      throw ValidationError("unservable node " + std::to_string(node) +
                            ": demand exceeds capacity");
    }
  }

  std::size_t covered = prefix_end(route, 0, inst, inst.capacity);
  for (std::size_t p = 0; p < covered; ++p) {
    for (int k = 0; k < K; ++k) plan.initial_load[k] += inst.demand[route[p]][k];
  }

  // Walk the inventory recursion; whenever the stock on hand cannot cover the
  // next node, the current node becomes a resupply point.
  std::vector<double> onhand = plan.initial_load;
  for (std::size_t p = 0; p + 1 < route.size(); ++p) {
    for (int k = 0; k < K; ++k) onhand[k] -= inst.demand[route[p]][k];
    int next = route[p + 1];
    bool short_of = false;
    for (int k = 0; k < K; ++k) {
      if (onhand[k] < inst.demand[next][k] - 1e-9) short_of = true;
    }
    if (!short_of) continue;

    double carried = 0;
    for (int k = 0; k < K; ++k) carried += onhand[k];
    std::size_t refill_end = prefix_end(route, p + 1, inst, inst.capacity - carried);
    if (refill_end == p + 1) {
      throw ValidationError("unservable node " + std::to_string(next) +
                            ": refill cannot cover its demand");
    }
    LoadPlan::Refill refill{static_cast<int>(p), route[p], std::vector<double>(K, 0.0)};
    for (std::size_t q = p + 1; q < refill_end; ++q) {
      for (int k = 0; k < K; ++k) refill.amounts[k] += inst.demand[route[q]][k];
    }
    for (int k = 0; k < K; ++k) onhand[k] += refill.amounts[k];
    plan.refills.push_back(std::move(refill));
  }
  return plan;
}

std::vector<int> resupply_positions(const std::vector<int>& route, const Instance& inst) {
  std::vector<int> positions;
  std::size_t covered = prefix_end(route, 0, inst, inst.capacity);
  while (covered < route.size()) {
    if (covered == 0) {
      throw ValidationError("unservable node " + std::to_string(route[0]) +
                            ": demand exceeds capacity");
    }
    positions.push_back(static_cast<int>(covered) - 1);
    std::size_t next = prefix_end(route, covered, inst, inst.capacity);
    if (next == covered) {
      throw ValidationError("unservable node " + std::to_string(route[covered]) +
                            ": demand exceeds capacity");
    }
    covered = next;
  }
  return positions;
}

int count_resupply_points(const std::vector<int>& route, const Instance& inst) {
  return static_cast<int>(resupply_positions(route, inst).size());
}

std::vector<double> provisional_completion(const Routes& routes,
                                           const std::vector<LoadPlan>& plans,
                                           const Instance& inst) {
  std::vector<double> c(inst.nodes.size(), 0.0);
  for (std::size_t m = 0; m < routes.size(); ++m) {
    const auto& route = routes[m];
    std::vector<char> refill_at(route.size(), 0);
    for (const auto& rf : plans[m].refills) refill_at[rf.position] = 1;
    double clock = 0;
    int prev = 0;
    for (std::size_t p = 0; p < route.size(); ++p) {
      int node = route[p];
      clock += inst.mhc_travel[prev][node] + inst.service_time[node];
      c[node] = clock;
      if (refill_at[p]) clock += inst.resupply_time;
      prev = node;
    }
  }
  return c;
}

std::vector<int> order_truck(const Routes& routes, const std::vector<LoadPlan>& plans,
                             const std::vector<double>& completion) {
  struct Key {
    double c;
    std::size_t route;
    int position;
    int node;
  };
  std::vector<Key> keys;
  for (std::size_t m = 0; m < routes.size(); ++m) {
    for (const auto& rf : plans[m].refills) {
      keys.push_back({completion[rf.node], m, rf.position, rf.node});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.c != b.c) return a.c < b.c;
    if (a.route != b.route) return a.route < b.route;
    return a.position < b.position;
  });
  std::vector<int> order;
  order.reserve(keys.size());
  for (const Key& k : keys) order.push_back(k.node);
  return order;
}

Schedule settle(const Routes& routes, const std::vector<int>& truck_order,
                const std::vector<LoadPlan>& plans, const Instance& inst) {
  const std::size_t sz = inst.nodes.size();
  const int K = inst.num_products;
  Schedule sched;
  sched.completion.assign(sz, 0.0);
  sched.truck_arrival.assign(sz, 0.0);
  sched.mhc_wait.assign(sz, 0.0);
  sched.truck_wait.assign(sz, 0.0);
  sched.inventory_on_arrival.assign(sz, std::vector<double>(K, 0.0));
  sched.resupplied.assign(sz, std::vector<double>(K, 0.0));

  std::vector<double> prov = provisional_completion(routes, plans, inst);

  // Locate every node and mark refills.
  std::vector<int> route_of(sz, -1), pos_of(sz, -1);
  for (std::size_t m = 0; m < routes.size(); ++m) {
    for (std::size_t p = 0; p < routes[m].size(); ++p) {
      route_of[routes[m][p]] = static_cast<int>(m);
      pos_of[routes[m][p]] = static_cast<int>(p);
    }
  }

  // Truck simulation. A wait of the MHC at a resupply node delays everything
  // after that node on its route, which the shift accumulators track.
  std::vector<double> shift(routes.size(), 0.0);
  std::vector<std::vector<std::pair<int, double>>> waits_on(routes.size());
  std::vector<int> last_visited_pos(routes.size(), -1);
  double clock = 0;
  int prev = 0;
  for (int node : truck_order) {
    int m = route_of[node];
    assert(m >= 0 && pos_of[node] > last_visited_pos[m]);
    last_visited_pos[m] = pos_of[node];
    sched.truck_arrival[node] = clock + inst.truck_travel[prev][node];
    sched.truck_total_time += inst.truck_travel[prev][node];
    double c_now = prov[node] + shift[m];
    sched.mhc_wait[node] = std::max(0.0, sched.truck_arrival[node] - c_now);
    sched.truck_wait[node] = std::max(0.0, c_now - sched.truck_arrival[node]);
    clock = std::max(sched.truck_arrival[node], c_now) + inst.resupply_time;
    if (sched.mhc_wait[node] > 0) {
      shift[m] += sched.mhc_wait[node];
      waits_on[m].push_back({pos_of[node], sched.mhc_wait[node]});
    }
    prev = node;
  }
  if (!truck_order.empty()) sched.truck_total_time += inst.truck_travel[prev][0];

  // Final completion times and the latest depot return.
  for (std::size_t m = 0; m < routes.size(); ++m) {
    const auto& route = routes[m];
    if (route.empty()) continue;
    std::size_t wi = 0;
    double acc = 0;
    for (std::size_t p = 0; p < route.size(); ++p) {
      while (wi < waits_on[m].size() &&
             waits_on[m][wi].first < static_cast<int>(p)) {
        acc += waits_on[m][wi].second;
        ++wi;
      }
      sched.completion[route[p]] = prov[route[p]] + acc;
    }
    int last = route.back();
    double back = sched.completion[last] + sched.mhc_wait[last] + inst.mhc_travel[last][0];
    // A refill at the very last node would add its duration here, but the
    // prefix policy never places one there.
    sched.latest_arrival = std::max(sched.latest_arrival, back);
  }

  // Inventory trace from the plans.
  for (std::size_t m = 0; m < routes.size(); ++m) {
    const auto& route = routes[m];
    std::vector<double> onhand = plans[m].initial_load;
    std::size_t ri = 0;
    for (std::size_t p = 0; p < route.size(); ++p) {
      int node = route[p];
      sched.inventory_on_arrival[node] = onhand;
      for (int k = 0; k < K; ++k) onhand[k] -= inst.demand[node][k];
      if (ri < plans[m].refills.size() &&
          plans[m].refills[ri].position == static_cast<int>(p)) {
        sched.resupplied[node] = plans[m].refills[ri].amounts;
        for (int k = 0; k < K; ++k) onhand[k] += plans[m].refills[ri].amounts[k];
        ++ri;
      }
    }
  }
  return sched;
}

ScheduleResult schedule(const Routes& routes, const Instance& inst) {
  std::vector<LoadPlan> plans;
  plans.reserve(routes.size());
  for (const auto& route : routes) plans.push_back(plan_loads(route, inst));

  std::vector<double> prov = provisional_completion(routes, plans, inst);
  std::vector<int> order = order_truck(routes, plans, prov);

  ScheduleResult result;
  const int cap = static_cast<int>(order.size()) + 2;
  Schedule sched;
  for (;;) {
    sched = settle(routes, order, plans, inst);
    ++result.passes;
    std::vector<int> next = order_truck(routes, plans, sched.completion);
    if (next == order) break;
    if (result.passes >= cap) {
      sched.stabilized = false;
      break;
    }
    order = std::move(next);
  }

  result.solution.routes = routes;
  for (const auto& plan : plans) {
    for (const auto& rf : plan.refills) result.solution.resupply_nodes.push_back(rf.node);
  }
  std::sort(result.solution.resupply_nodes.begin(), result.solution.resupply_nodes.end());
  result.solution.truck_route = order;  // the order the final settle used
  result.schedule = std::move(sched);
  return result;
}

}  // namespace mhc
