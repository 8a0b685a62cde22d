#include "mhc/alns.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>

#include "mhc/errors.hpp"

namespace mhc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int ceil_frac(double fraction, int count) {
  return std::max(1, static_cast<int>(std::ceil(fraction * count)));
}

// k distinct indices out of 0..n-1, ascending.
std::vector<int> sample_indices(int n, int k, Rng& rng) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(uniform_index(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

// ---------------------------------------------------------------------------
// History table

void HistoryTable::update(const Routes& routes, double objective) {
  for (std::size_t m = 0; m < routes.size(); ++m) {
    int pred = 0;
    for (int node : routes[m]) {
      std::uint64_t k = key(node, static_cast<int>(m), pred);
      auto it = best_.find(k);
      if (it == best_.end() || objective < it->second) best_[k] = objective;
      pred = node;
    }
  }
}

double HistoryTable::lookup(int node, int route, int pred) const {
  auto it = best_.find(key(node, route, pred));
  return it == best_.end() ? kInf : it->second;
}

// ---------------------------------------------------------------------------
// Sync evaluator

Evaluation SyncEvaluator::evaluate(const Routes& routes) {
  ScheduleResult res = schedule(routes, *inst_);
#ifndef NDEBUG
  FeasibilityReport rep = validate_solution(*inst_, res.solution, res.schedule);
  if (!rep.passed) {
    std::fprintf(stderr, "infeasible candidate schedule (%zu violations)\n",
                 rep.violations.size());
    std::abort();
  }
#endif
  Evaluation ev;
  ev.objective = objective(res.schedule);
  const std::size_t sz = inst_->nodes.size();
  ev.is_resupply.assign(sz, 0);
  ev.has_wait.assign(sz, 0);
  for (int node : res.solution.resupply_nodes) {
    ev.is_resupply[node] = 1;
    if (res.schedule.mhc_wait[node] > 1e-9 || res.schedule.truck_wait[node] > 1e-9) {
      ev.has_wait[node] = 1;
    }
  }
  double worst = -kInf;
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

double SyncEvaluator::route_cost(const std::vector<int>& route) const {
  return sync_free_route_cost(route, *inst_);
}

// ---------------------------------------------------------------------------
// Selection, acceptance, weights

int select_destroy(const OperatorStats& stats, Rng& rng) {
  double total = 0;
  for (double w : stats.weight) total += w;
  double draw = uniform01(rng) * total;
  double acc = 0;
  for (int d = 0; d < kNumDestroy; ++d) {
    acc += stats.weight[d];
    if (draw < acc) return d;
  }
  return kNumDestroy - 1;
}

bool accept(double f_new, double f_current, double temperature, Rng& rng) {
  if (f_new < f_current) return true;
  return uniform01(rng) < std::exp(-(f_new - f_current) / temperature);
}

void update_weights(OperatorStats& stats, double gamma) {
  for (int d = 0; d < kNumDestroy; ++d) {
    if (stats.segment_uses[d] > 0) {
      double mean = stats.segment_score[d] / stats.segment_uses[d];
      stats.weight[d] = gamma * stats.weight[d] + (1.0 - gamma) * mean;
    }
  }
  double total = 0;
  for (double w : stats.weight) total += w;
  for (double& w : stats.weight) w /= total;
  stats.weight_history.push_back(stats.weight);
  stats.segment_score.fill(0.0);
  stats.segment_uses.fill(0);
}

// ---------------------------------------------------------------------------
// Destroy operators

namespace {

std::vector<int> resupply_list(const Routes& routes, const Evaluation& eval) {
  std::vector<int> out;
  for (const auto& route : routes) {
    for (int node : route) {
      if (eval.is_resupply[node]) out.push_back(node);
    }
  }
  return out;
}

std::vector<int> destroy_random_node(const Routes& routes, const AlnsConfig& cfg,
                                     Rng& rng) {
  std::vector<int> nonempty;
  for (std::size_t m = 0; m < routes.size(); ++m) {
    if (!routes[m].empty()) nonempty.push_back(static_cast<int>(m));
  }
  int m = nonempty[uniform_index(rng, nonempty.size())];
  const auto& route = routes[m];
  double f = uniform_between(rng, cfg.destroy_fraction_min, cfg.destroy_fraction_max);
  int k = std::min<int>(route.size(), ceil_frac(f, static_cast<int>(route.size())));
  std::vector<int> removed;
  for (int p : sample_indices(static_cast<int>(route.size()), k, rng)) {
    removed.push_back(route[p]);
  }
  return removed;
}

std::vector<int> destroy_longest_node_cost(const Routes& routes, const Instance& inst,
                                           const AlnsConfig& cfg, Rng& rng) {
  std::vector<std::pair<double, int>> savings;
  for (const auto& route : routes) {
    for (std::size_t p = 0; p < route.size(); ++p) {
      int prev = p == 0 ? 0 : route[p - 1];
      int next = p + 1 == route.size() ? 0 : route[p + 1];
      int node = route[p];
      double s = inst.mhc_travel[prev][node] + inst.mhc_travel[node][next] -
                 inst.mhc_travel[prev][next];
      savings.push_back({s, node});
    }
  }
  std::sort(savings.begin(), savings.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  double f = uniform_between(rng, cfg.destroy_fraction_min, cfg.destroy_fraction_max);
  int k = std::min<int>(savings.size(), ceil_frac(f, static_cast<int>(savings.size())));
  std::vector<int> removed;
  for (int i = 0; i < k; ++i) removed.push_back(savings[i].second);
  return removed;
}

std::vector<int> destroy_resupply_nodes(const Routes& routes, const Evaluation& eval,
                                        Rng& rng) {
  std::vector<int> pool = resupply_list(routes, eval);
  if (pool.empty()) return {};
  int k = (static_cast<int>(pool.size()) + 1) / 2;
  std::vector<int> removed;
  for (int p : sample_indices(static_cast<int>(pool.size()), k, rng)) {
    removed.push_back(pool[p]);
  }
  return removed;
}

std::vector<int> destroy_wait_nodes(const Routes& routes, const Evaluation& eval) {
  std::vector<int> removed;
  for (const auto& route : routes) {
    for (int node : route) {
      if (eval.has_wait[node]) removed.push_back(node);
    }
  }
  return removed;
}

// Successor (dir=+1) or predecessor (dir=-1) chains of half the resupply
// nodes, stopping before the next resupply node or the route end.
std::vector<int> destroy_resupply_chains(const Routes& routes, const Evaluation& eval,
                                         int dir, Rng& rng) {
  std::vector<std::pair<int, int>> pool;  // (route, position) of resupply nodes
  for (std::size_t m = 0; m < routes.size(); ++m) {
    for (std::size_t p = 0; p < routes[m].size(); ++p) {
      if (eval.is_resupply[routes[m][p]]) {
        pool.push_back({static_cast<int>(m), static_cast<int>(p)});
      }
    }
  }
  if (pool.empty()) return {};
  int k = (static_cast<int>(pool.size()) + 1) / 2;
  std::vector<int> removed;
  for (int pi : sample_indices(static_cast<int>(pool.size()), k, rng)) {
    auto [m, p] = pool[pi];
    const auto& route = routes[m];
    for (int q = p + dir; q >= 0 && q < static_cast<int>(route.size()); q += dir) {
      if (eval.is_resupply[route[q]]) break;
      removed.push_back(route[q]);
    }
  }
  return removed;
}

std::vector<int> destroy_historical(const Routes& routes, const HistoryTable& history,
                                    const AlnsConfig& cfg, Rng& rng, int total_nodes) {
  std::vector<std::pair<double, int>> scored;
  for (std::size_t m = 0; m < routes.size(); ++m) {
    int pred = 0;
    for (int node : routes[m]) {
      scored.push_back({history.lookup(node, static_cast<int>(m), pred), node});
      pred = node;
    }
  }
  // Worst recorded best first.
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  double f = uniform_between(rng, cfg.destroy_fraction_min, cfg.destroy_fraction_max);
  int k = std::min<int>(scored.size(), ceil_frac(f, total_nodes));
  std::vector<int> removed;
  for (int i = 0; i < k; ++i) removed.push_back(scored[i].second);
  return removed;
}

}  // namespace

DestroyResult destroy(DestroyOp op, const Routes& current, const Evaluation& eval,
                      const HistoryTable& history, const Instance& inst,
                      const AlnsConfig& cfg, Rng& rng) {
  std::vector<int> removed;
  switch (op) {
    case DestroyOp::random_node:
      removed = destroy_random_node(current, cfg, rng);
      break;
    case DestroyOp::longest_node_cost:
      removed = destroy_longest_node_cost(current, inst, cfg, rng);
      break;
    case DestroyOp::resupply_nodes:
      removed = destroy_resupply_nodes(current, eval, rng);
      break;
    case DestroyOp::wait_nodes:
      removed = destroy_wait_nodes(current, eval);
      break;
    case DestroyOp::entire_route:
      removed = current[uniform_index(rng, current.size())];
      break;
    case DestroyOp::longest_route:
      removed = current[eval.longest_route];
      break;
    case DestroyOp::after_resupply:
      removed = destroy_resupply_chains(current, eval, +1, rng);
      break;
    case DestroyOp::prior_resupply:
      removed = destroy_resupply_chains(current, eval, -1, rng);
      break;
    case DestroyOp::historical:
      removed = destroy_historical(current, history, cfg, rng, inst.num_customers());
      break;
  }

  int attributed = static_cast<int>(op);
  if (removed.empty()) {
    // Operators that found nothing to remove fall back to random removal.
    removed = destroy_random_node(current, cfg, rng);
    attributed = static_cast<int>(DestroyOp::random_node);
  }

  std::sort(removed.begin(), removed.end());
  removed.erase(std::unique(removed.begin(), removed.end()), removed.end());

  std::vector<char> gone(inst.nodes.size(), 0);
  for (int node : removed) gone[node] = 1;
  DestroyResult result;
  result.partial.resize(current.size());
  for (std::size_t m = 0; m < current.size(); ++m) {
    for (int node : current[m]) {
      if (!gone[node]) result.partial[m].push_back(node);
    }
  }
  result.removed = std::move(removed);
  result.attributed_op = attributed;
  return result;
}

Routes repair(RepairOp op, Routes partial, std::vector<int> removed, const Evaluator& ev,
              Rng& rng) {
  RouteCostFn cost = [&ev](const std::vector<int>& r) { return ev.route_cost(r); };
  switch (op) {
    case RepairOp::greedy:
      insert_greedy(partial, removed, cost, &rng);
      break;
    case RepairOp::regret1:
      insert_regret(partial, removed, 1, cost, &rng);
      break;
    case RepairOp::regret2:
      insert_regret(partial, removed, 2, cost, &rng);
      break;
  }
  return partial;
}

// ---------------------------------------------------------------------------
// Main loop

EngineResult run_engine(const Instance& inst, const AlnsConfig& cfg, Evaluator& ev) {
  Rng rng(cfg.seed);
  EngineResult result;

  Routes current = cheapest_insertion_routes(
      inst.num_customers(), inst.num_mhc,
      [&ev](const std::vector<int>& r) { return ev.route_cost(r); });
  Evaluation cur_eval = ev.evaluate(current);
  result.construction_objective = cur_eval.objective;

  Routes best = current;
  Evaluation best_eval = cur_eval;
  double f_cur = cur_eval.objective;
  double f_best = cur_eval.objective;

  HistoryTable history;
  history.update(current, f_cur);

  OperatorStats& stats = result.stats;
  stats.weight.fill(1.0 / kNumDestroy);

  double temperature = cfg.temp0 > 0 ? cfg.temp0 : 0.05 * f_cur;
  if (temperature <= 0) temperature = 1e-9;

  int no_improve = 0;
  result.trace.reserve(cfg.iter_max);

  for (int iter = 1; iter <= cfg.iter_max; ++iter) {
    int d = select_destroy(stats, rng);
    int rep = static_cast<int>(uniform_index(rng, 3));

    DestroyResult dres = destroy(static_cast<DestroyOp>(d + 1), current, cur_eval,
                                 history, inst, cfg, rng);
    int d_used = dres.attributed_op - 1;
    Routes cand = repair(static_cast<RepairOp>(rep), std::move(dres.partial),
                         std::move(dres.removed), ev, rng);
    Evaluation cand_eval = ev.evaluate(cand);
    double f_new = cand_eval.objective;
    history.update(cand, f_new);

    ++stats.segment_uses[d_used];
    bool accepted;
    double score;
    if (f_new < f_best) {
      score = cfg.scores[0];
      best = cand;
      best_eval = cand_eval;
      f_best = f_new;
      accepted = true;
      no_improve = 0;
      ++stats.global_best_count[d_used];
    } else {
      ++no_improve;
      if (f_new < f_cur) {
        score = cfg.scores[1];
        accepted = true;
      } else if (accept(f_new, f_cur, temperature, rng)) {
        score = cfg.scores[2];
        accepted = true;
      } else {
        score = cfg.scores[3];
        accepted = false;
      }
    }
    stats.segment_score[d_used] += score;
    if (accepted) {
      current = std::move(cand);
      cur_eval = std::move(cand_eval);
      f_cur = f_new;
    }

    result.trace.push_back({iter, d_used + 1, rep, f_new, f_cur, f_best, accepted,
                            temperature});
    temperature *= cfg.cooling;
    if (cfg.segment_length > 0 && iter % cfg.segment_length == 0) {
      update_weights(stats, cfg.gamma);
    }
    if (no_improve >= cfg.max_no_improve) {
      current = best;
      cur_eval = best_eval;
      f_cur = f_best;
      no_improve = 0;
    }
  }

  result.best_routes = std::move(best);
  result.best_objective = f_best;
  return result;
}

RunResult run(const Instance& inst, const AlnsConfig& cfg) {
  SyncEvaluator ev(inst);
  EngineResult engine = run_engine(inst, cfg, ev);
  ScheduleResult sched = schedule(engine.best_routes, inst);
  RunResult result;
  result.best = std::move(sched.solution);
  result.best_schedule = std::move(sched.schedule);
  result.best_objective = engine.best_objective;
  result.construction_objective = engine.construction_objective;
  result.stats = std::move(engine.stats);
  result.trace = std::move(engine.trace);
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,destroy_op,repair_op,f_new,f_current,f_best,accepted,temperature\n";
  char buf[160];
  for (const TraceRow& row : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.9g,%.9g,%.9g,%d,%.9g\n", row.iteration,
                  row.destroy_op, row.repair_op, row.f_new, row.f_current, row.f_best,
                  row.accepted ? 1 : 0, row.temperature);
    out << buf;
  }
}

}  // namespace mhc
