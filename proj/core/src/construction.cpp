#include "mhc/construction.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mhc {

double sync_free_route_cost(const std::vector<int>& route, const Instance& inst) {
  if (route.empty()) return 0.0;
  double cost = 0;
  int prev = 0;
  for (int node : route) {
    cost += inst.mhc_travel[prev][node] + inst.service_time[node];
    prev = node;
  }
  cost += inst.mhc_travel[prev][0];
  cost += inst.resupply_time * count_resupply_points(route, inst);
  return cost;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  double cost = kInf;
  int route = -1;
  int position = -1;
  int node = -1;

  bool better_than(const Candidate& o) const {
    if (cost != o.cost) return cost < o.cost;
    if (route != o.route) return route < o.route;
    if (position != o.position) return position < o.position;
    return node < o.node;
  }
};

// Shared scan state: route costs and the max over the others, so candidate
// objectives come from one modified route only.
struct Scan {
  std::vector<double> dur;
  std::vector<int> trial;

  explicit Scan(const Routes& routes, const RouteCostFn& cost) {
    dur.reserve(routes.size());
    for (const auto& r : routes) dur.push_back(r.empty() ? 0.0 : cost(r));
  }

  double max_excluding(std::size_t skip) const {
    double m = 0;
    for (std::size_t i = 0; i < dur.size(); ++i) {
      if (i != skip) m = std::max(m, dur[i]);
    }
    return m;
  }

  double with_insert(const std::vector<int>& route, int pos, int node,
                     const RouteCostFn& cost) {
    trial.assign(route.begin(), route.end());
    trial.insert(trial.begin() + pos, node);
    return cost(trial);
  }
};

int empty_count(const Routes& routes) {
  int c = 0;
  for (const auto& r : routes) {
    if (r.empty()) ++c;
  }
  return c;
}

// Keeps the lexicographically first minimum, and all cost ties with it when a
// pool is attached (randomized tie-breaking for the repair operators).
struct Best {
  Candidate best;
  std::vector<Candidate>* pool = nullptr;

  void offer(const Candidate& cand) {
    if (pool != nullptr) {
      if (cand.cost < best.cost) pool->clear();
      if (cand.cost <= best.cost) pool->push_back(cand);
    }
    if (cand.better_than(best)) best = cand;
  }

  Candidate take(Rng* rng) const {
    if (rng != nullptr && pool->size() > 1) {
      return (*pool)[uniform_index(*rng, pool->size())];
    }
    return best;
  }
};

}  // namespace

void insert_greedy(Routes& routes, std::vector<int>& pending, const RouteCostFn& cost,
                   Rng* rng) {
  Scan scan(routes, cost);
  std::vector<Candidate> ties;
  while (!pending.empty()) {
    bool force_empty = static_cast<int>(pending.size()) == empty_count(routes);
    ties.clear();
    Best best{{}, rng != nullptr ? &ties : nullptr};
    for (int node : pending) {
      for (std::size_t m = 0; m < routes.size(); ++m) {
        if (force_empty && !routes[m].empty()) continue;
        double others = scan.max_excluding(m);
        for (int pos = 0; pos <= static_cast<int>(routes[m].size()); ++pos) {
          double obj = std::max(others, scan.with_insert(routes[m], pos, node, cost));
          best.offer({obj, static_cast<int>(m), pos, node});
        }
      }
    }
    Candidate pick = best.take(rng);
    routes[pick.route].insert(routes[pick.route].begin() + pick.position, pick.node);
    scan.dur[pick.route] = cost(routes[pick.route]);
    pending.erase(std::find(pending.begin(), pending.end(), pick.node));
  }
}

void insert_regret(Routes& routes, std::vector<int>& pending, int degree,
                   const RouteCostFn& cost, Rng* rng) {
  Scan scan(routes, cost);
  std::vector<double> costs;
  std::vector<Candidate> ties;
  std::vector<Candidate> chosen_ties;
  while (!pending.empty()) {
    bool force_empty = static_cast<int>(pending.size()) == empty_count(routes);
    Candidate chosen;
    double chosen_regret = -kInf;
    for (int node : pending) {
      ties.clear();
      Best best{{}, rng != nullptr ? &ties : nullptr};
      costs.clear();
      for (std::size_t m = 0; m < routes.size(); ++m) {
        if (force_empty && !routes[m].empty()) continue;
        double others = scan.max_excluding(m);
        for (int pos = 0; pos <= static_cast<int>(routes[m].size()); ++pos) {
          double obj = std::max(others, scan.with_insert(routes[m], pos, node, cost));
          costs.push_back(obj);
          best.offer({obj, static_cast<int>(m), pos, node});
        }
      }
      std::sort(costs.begin(), costs.end());
      // Regret against the (degree+1)-th best position, or the worst
      // available when there are fewer.
      std::size_t ref = std::min(static_cast<std::size_t>(degree), costs.size() - 1);
      double regret = costs[ref] - costs[0];
      bool take = regret > chosen_regret ||
                  (regret == chosen_regret &&
                   (best.best.cost < chosen.cost ||
                    (best.best.cost == chosen.cost && best.best.node < chosen.node)));
      if (take) {
        chosen = best.best;
        chosen_regret = regret;
        chosen_ties = ties;
      }
    }
    if (rng != nullptr && chosen_ties.size() > 1) {
      chosen = chosen_ties[uniform_index(*rng, chosen_ties.size())];
    }
    routes[chosen.route].insert(routes[chosen.route].begin() + chosen.position, chosen.node);
    scan.dur[chosen.route] = cost(routes[chosen.route]);
    pending.erase(std::find(pending.begin(), pending.end(), chosen.node));
  }
}

Routes cheapest_insertion_routes(int num_customers, int num_mhc, const RouteCostFn& cost) {
  Routes routes(num_mhc);
  std::vector<int> pending;
  pending.reserve(num_customers);
  for (int i = 1; i <= num_customers; ++i) pending.push_back(i);
  insert_greedy(routes, pending, cost);
  return routes;
}

ScheduleResult initial_solution(const Instance& inst, std::uint64_t /*seed*/) {
  Routes routes = cheapest_insertion_routes(
      inst.num_customers(), inst.num_mhc,
      [&inst](const std::vector<int>& r) { return sync_free_route_cost(r, inst); });
  return schedule(routes, inst);
}

double insertion_cost(const Routes& partial, int node, int route, int position,
                      const Instance& inst) {
  if (route < 0 || route >= static_cast<int>(partial.size())) {
    throw std::out_of_range("route index out of range");
  }
  if (position < 0 || position > static_cast<int>(partial[route].size())) {
    throw std::out_of_range("insertion position out of range");
  }
  double obj = 0;
  for (std::size_t m = 0; m < partial.size(); ++m) {
    if (static_cast<int>(m) == route) continue;
    obj = std::max(obj, sync_free_route_cost(partial[m], inst));
  }
  std::vector<int> trial = partial[route];
  trial.insert(trial.begin() + position, node);
  return std::max(obj, sync_free_route_cost(trial, inst));
}

}  // namespace mhc
