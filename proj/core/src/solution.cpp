#include "mhc/solution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mhc/errors.hpp"

namespace mhc {

using json = nlohmann::json;

namespace {
constexpr double kTol = 1e-6;
}

std::string constraint_name(Constraint c) {
  switch (c) {
    case Constraint::visit_once: return "visit_once";
    case Constraint::mhc_flow: return "mhc_flow";
    case Constraint::fleet_size: return "fleet_size";
    case Constraint::truck_flow: return "truck_flow";
    case Constraint::resupply_link: return "resupply_link";
    case Constraint::single_truck: return "single_truck";
    case Constraint::mhc_time: return "mhc_time";
    case Constraint::truck_time: return "truck_time";
    case Constraint::mhc_wait: return "mhc_wait";
    case Constraint::truck_wait: return "truck_wait";
    case Constraint::latest_arrival: return "latest_arrival";
    case Constraint::inventory: return "inventory";
    case Constraint::demand_cover: return "demand_cover";
    case Constraint::capacity: return "capacity";
    case Constraint::refill_link: return "refill_link";
  }
  return "?";
}

bool FeasibilityReport::has(Constraint c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.constraint == c; });
}

double objective(const Schedule& sched) {
  return sched.latest_arrival + sched.truck_total_time;
}

double total_distance(const Solution& sol, const Instance& inst) {
  double dist = 0;
  for (const auto& route : sol.routes) {
    int prev = 0;
    for (int node : route) {
      dist += inst.mhc_travel[prev][node];
      prev = node;
    }
    dist += inst.mhc_travel[prev][0];
  }
  if (!sol.truck_route.empty()) {
    int prev = 0;
    for (int node : sol.truck_route) {
      dist += inst.truck_travel[prev][node];
      prev = node;
    }
    dist += inst.truck_travel[prev][0];
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Feasibility checking. This walks the reported schedule and re-checks the
// constraint algebra; it never re-runs the scheduler.

FeasibilityReport validate_solution(const Instance& inst, const Solution& sol,
                                    const Schedule& sched) {
  const int n = inst.num_customers();
  const std::size_t sz = static_cast<std::size_t>(n) + 1;

  auto structural = [&](const std::string& msg) {
    throw ValidationError("malformed solution: " + msg);
  };

  if (sched.completion.size() != sz || sched.truck_arrival.size() != sz ||
      sched.mhc_wait.size() != sz || sched.truck_wait.size() != sz ||
      sched.inventory_on_arrival.size() != sz || sched.resupplied.size() != sz) {
    structural("schedule arrays do not match the instance size");
  }
  for (std::size_t i = 0; i < sz; ++i) {
    if (sched.inventory_on_arrival[i].size() != static_cast<std::size_t>(inst.num_products) ||
        sched.resupplied[i].size() != static_cast<std::size_t>(inst.num_products)) {
      structural("inventory rows do not match the product count");
    }
  }
  for (const auto& route : sol.routes) {
    for (int node : route) {
      if (node < 1 || node > n) structural("route contains invalid node id");
    }
  }
  for (int node : sol.truck_route) {
    if (node < 1 || node > n) structural("truck route contains invalid node id");
  }
  for (int node : sol.resupply_nodes) {
    if (node < 1 || node > n) structural("resupply set contains invalid node id");
  }

  FeasibilityReport report;
  auto flag = [&](Constraint c, std::string ctx, double mag) {
    report.passed = false;
    report.violations.push_back({c, std::move(ctx), mag});
  };

  // Visit counts and fleet shape.
  std::vector<int> count(sz, 0);
  for (const auto& route : sol.routes) {
    for (int node : route) ++count[node];
  }
  for (int i = 1; i <= n; ++i) {
    if (count[i] != 1) {
      flag(Constraint::visit_once, "customer " + std::to_string(i),
           std::abs(count[i] - 1));
    }
  }
  if (static_cast<int>(sol.routes.size()) != inst.num_mhc) {
    flag(Constraint::fleet_size, "route count",
         std::abs(static_cast<int>(sol.routes.size()) - inst.num_mhc));
  }
  for (std::size_t m = 0; m < sol.routes.size(); ++m) {
    if (sol.routes[m].empty()) {
      flag(Constraint::fleet_size, "route " + std::to_string(m) + " is empty", 1);
    }
  }

  // Truck visits exactly the resupply nodes, each once.
  std::vector<char> is_resupply(sz, 0);
  for (int node : sol.resupply_nodes) is_resupply[node] = 1;
  {
    std::vector<int> a = sol.resupply_nodes;
    std::vector<int> b = sol.truck_route;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) flag(Constraint::resupply_link, "truck route vs resupply set", 1);
    for (int node : sol.resupply_nodes) {
      if (count[node] == 0) {
        flag(Constraint::resupply_link, "resupply node " + std::to_string(node) +
             " not on any route", 1);
      }
    }
  }

  const double xi = inst.resupply_time;
  const auto& t = inst.mhc_travel;
  const auto& r = inst.truck_travel;
  const auto& c = sched.completion;
  const auto& a = sched.truck_arrival;
  const auto& w = sched.mhc_wait;
  const auto& u = sched.truck_wait;
  const auto& g = sched.inventory_on_arrival;
  const auto& q = sched.resupplied;

  // Service completion recursion along each route.
  for (std::size_t m = 0; m < sol.routes.size(); ++m) {
    const auto& route = sol.routes[m];
    if (route.empty()) continue;
    int first = route.front();
    double expect = t[0][first] + inst.service_time[first];
    if (std::abs(c[first] - expect) > kTol) {
      flag(Constraint::mhc_time, "node " + std::to_string(first),
           std::abs(c[first] - expect));
    }
    for (std::size_t p = 1; p < route.size(); ++p) {
      int i = route[p - 1], j = route[p];
      expect = c[i] + w[i] + (is_resupply[i] ? xi : 0.0) + t[i][j] + inst.service_time[j];
      if (std::abs(c[j] - expect) > kTol) {
        flag(Constraint::mhc_time, "node " + std::to_string(j), std::abs(c[j] - expect));
      }
    }
    // Latest arrival covers every depot return.
    int last = route.back();
    double back = c[last] + w[last] + (is_resupply[last] ? xi : 0.0) + t[last][0];
    if (sched.latest_arrival < back - kTol) {
      flag(Constraint::latest_arrival, "route " + std::to_string(m),
           back - sched.latest_arrival);
    }
  }

  // Truck arrival recursion along the truck tour.
  if (!sol.truck_route.empty()) {
    int first = sol.truck_route.front();
    double expect = r[0][first];
    if (std::abs(a[first] - expect) > kTol) {
      flag(Constraint::truck_time, "node " + std::to_string(first),
           std::abs(a[first] - expect));
    }
    for (std::size_t p = 1; p < sol.truck_route.size(); ++p) {
      int i = sol.truck_route[p - 1], j = sol.truck_route[p];
      expect = a[i] + u[i] + xi + r[i][j];
      if (std::abs(a[j] - expect) > kTol) {
        flag(Constraint::truck_time, "node " + std::to_string(j), std::abs(a[j] - expect));
      }
    }
  }

  // Wait definitions at synchronization points.
  for (int i : sol.resupply_nodes) {
    if (w[i] < a[i] - c[i] - kTol || w[i] < -kTol) {
      flag(Constraint::mhc_wait, "node " + std::to_string(i), (a[i] - c[i]) - w[i]);
    }
    if (u[i] < c[i] - a[i] - kTol || u[i] < -kTol) {
      flag(Constraint::truck_wait, "node " + std::to_string(i), (c[i] - a[i]) - u[i]);
    }
  }

  // Inventory recursion, demand cover, capacity and refill placement.
  for (const auto& route : sol.routes) {
    for (std::size_t p = 0; p < route.size(); ++p) {
      int j = route[p];
      double onboard = 0;
      for (int k = 0; k < inst.num_products; ++k) {
        onboard += g[j][k];
        if (g[j][k] < inst.demand[j][k] - kTol) {
          flag(Constraint::demand_cover,
               "node " + std::to_string(j) + " product " + std::to_string(k),
               inst.demand[j][k] - g[j][k]);
        }
        if (p > 0) {
          int i = route[p - 1];
          double expect = g[i][k] - inst.demand[i][k] + q[i][k];
          if (std::abs(g[j][k] - expect) > kTol) {
            flag(Constraint::inventory,
                 "node " + std::to_string(j) + " product " + std::to_string(k),
                 std::abs(g[j][k] - expect));
          }
        }
      }
      if (onboard > inst.capacity + kTol) {
        flag(Constraint::capacity, "node " + std::to_string(j), onboard - inst.capacity);
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    double refill = 0;
    for (int k = 0; k < inst.num_products; ++k) {
      if (q[i][k] < -kTol) {
        flag(Constraint::refill_link, "negative refill at node " + std::to_string(i),
             -q[i][k]);
      }
      refill += q[i][k];
    }
    if (!is_resupply[i] && refill > kTol) {
      flag(Constraint::refill_link, "refill at non-resupply node " + std::to_string(i),
           refill);
    }
    if (is_resupply[i] && refill > inst.capacity + kTol) {
      flag(Constraint::refill_link, "refill above capacity at node " + std::to_string(i),
           refill - inst.capacity);
    }
  }

  return report;
}

// ---------------------------------------------------------------------------
// JSON document

std::string solution_to_json(const Solution& sol, const Schedule& sched) {
  json doc;
  doc["routes"] = sol.routes;
  doc["resupply_nodes"] = sol.resupply_nodes;
  doc["truck_route"] = sol.truck_route;
  json s;
  s["completion"] = sched.completion;
  s["truck_arrival"] = sched.truck_arrival;
  s["mhc_wait"] = sched.mhc_wait;
  s["truck_wait"] = sched.truck_wait;
  s["inventory_on_arrival"] = sched.inventory_on_arrival;
  s["resupplied"] = sched.resupplied;
  s["latest_arrival"] = sched.latest_arrival;
  s["truck_total_time"] = sched.truck_total_time;
  s["stabilized"] = sched.stabilized;
  doc["schedule"] = std::move(s);
  doc["objective"] = objective(sched);
  return doc.dump(2) + "\n";
}

std::pair<Solution, Schedule> solution_from_json(const std::string& text) {
  try {
    json doc = json::parse(text);
    Solution sol;
    sol.routes = doc.at("routes").get<Routes>();
    sol.resupply_nodes = doc.at("resupply_nodes").get<std::vector<int>>();
    sol.truck_route = doc.at("truck_route").get<std::vector<int>>();
    const auto& s = doc.at("schedule");
    Schedule sched;
    sched.completion = s.at("completion").get<std::vector<double>>();
    sched.truck_arrival = s.at("truck_arrival").get<std::vector<double>>();
    sched.mhc_wait = s.at("mhc_wait").get<std::vector<double>>();
    sched.truck_wait = s.at("truck_wait").get<std::vector<double>>();
    sched.inventory_on_arrival = s.at("inventory_on_arrival").get<Matrix>();
    sched.resupplied = s.at("resupplied").get<Matrix>();
    sched.latest_arrival = s.at("latest_arrival").get<double>();
    sched.truck_total_time = s.at("truck_total_time").get<double>();
    sched.stabilized = s.at("stabilized").get<bool>();
    return {std::move(sol), std::move(sched)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad solution document: ") + e.what());
  }
}

void save_solution(const Solution& sol, const Schedule& sched, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << solution_to_json(sol, sched);
}

std::pair<Solution, Schedule> load_solution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return solution_from_json(buf.str());
}

}  // namespace mhc
