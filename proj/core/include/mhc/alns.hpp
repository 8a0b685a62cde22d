#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "mhc/construction.hpp"
#include "mhc/rng.hpp"
#include "mhc/solution.hpp"

namespace mhc {

struct AlnsConfig {
  int iter_max = 25000;
  int segment_length = 150;     // iterations between weight updates
  double gamma = 0.8;           // reaction factor: share of the old weight kept
  double temp0 = 0.0;           // <= 0: 5% of the construction objective
  double cooling = 0.9975;      // per-iteration temperature factor
  int max_no_improve = 2000;    // restart current from best after this many
  // new global best / better than current / accepted / rejected
  std::array<double, 4> scores{10.0, 7.0, 5.0, 1.0};
  double destroy_fraction_min = 0.10;
  double destroy_fraction_max = 0.15;
  std::uint64_t seed = 1;
};

// Destroy operators, ids as used in traces and stats.
enum class DestroyOp : int {
  random_node = 1,        // random nodes from one random route
  longest_node_cost = 2,  // largest removal savings
  resupply_nodes = 3,     // half of the resupply nodes
  wait_nodes = 4,         // every node with a nonzero wait
  entire_route = 5,
  longest_route = 6,      // the route that sets the latest arrival
  after_resupply = 7,     // successor chains of chosen resupply nodes
  prior_resupply = 8,     // predecessor chains of chosen resupply nodes
  historical = 9,         // worst recorded placements
};
constexpr int kNumDestroy = 9;

enum class RepairOp : int { greedy = 0, regret1 = 1, regret2 = 2 };

struct OperatorStats {
  std::array<double, kNumDestroy> weight{};
  std::array<double, kNumDestroy> segment_score{};
  std::array<int, kNumDestroy> segment_uses{};
  std::array<long, kNumDestroy> global_best_count{};
  // Snapshot of the normalized weights after every segment update.
  std::vector<std::array<double, kNumDestroy>> weight_history;
};

struct TraceRow {
  int iteration;
  int destroy_op;
  int repair_op;
  double f_new;
  double f_current;
  double f_best;
  bool accepted;
  double temperature;
};

// Best objective seen for each (node, route, predecessor) placement.
class HistoryTable {
 public:
  void update(const Routes& routes, double objective);
  double lookup(int node, int route, int pred) const;  // +inf when unseen

 private:
  static std::uint64_t key(int node, int route, int pred) {
    return (static_cast<std::uint64_t>(node) << 40) |
           (static_cast<std::uint64_t>(route) << 20) | static_cast<std::uint64_t>(pred);
  }
  std::unordered_map<std::uint64_t, double> best_;
};

// What the engine needs to know about an evaluated candidate. The sync solver
// fills this from a settled schedule; the multi-trip baseline maps its trip
// structure onto the same shape.
struct Evaluation {
  double objective = 0;
  std::vector<std::uint8_t> is_resupply;  // by node id
  std::vector<std::uint8_t> has_wait;     // by node id
  int longest_route = 0;                  // argmax latest arrival
};

class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual Evaluation evaluate(const Routes& routes) = 0;
  virtual double route_cost(const std::vector<int>& route) const = 0;
};

// Settled synchronized schedule; asserts feasibility of every candidate in
// debug builds.
class SyncEvaluator : public Evaluator {
 public:
  explicit SyncEvaluator(const Instance& inst) : inst_(&inst) {}
  Evaluation evaluate(const Routes& routes) override;
  double route_cost(const std::vector<int>& route) const override;

 private:
  const Instance* inst_;
};

int select_destroy(const OperatorStats& stats, Rng& rng);

bool accept(double f_new, double f_current, double temperature, Rng& rng);

// Blend segment mean scores into the weights, normalize, reset the segment
// counters. Unused operators keep their weight.
void update_weights(OperatorStats& stats, double gamma);

struct DestroyResult {
  Routes partial;
  std::vector<int> removed;  // ascending ids
  int attributed_op;         // the operator charged in stats (fallbacks -> 1)
};

DestroyResult destroy(DestroyOp op, const Routes& current, const Evaluation& eval,
                      const HistoryTable& history, const Instance& inst,
                      const AlnsConfig& cfg, Rng& rng);

// Reinsertion under the evaluator's synchronization-free route cost; cost
// ties are drawn uniformly so repeated repairs explore the tie plateaus of
// the makespan objective.
Routes repair(RepairOp op, Routes partial, std::vector<int> removed, const Evaluator& ev,
              Rng& rng);

struct EngineResult {
  Routes best_routes;
  double best_objective = 0;
  double construction_objective = 0;
  OperatorStats stats;
  std::vector<TraceRow> trace;
};

// Full adaptive search loop over an arbitrary evaluator.
EngineResult run_engine(const Instance& inst, const AlnsConfig& cfg, Evaluator& ev);

struct RunResult {
  Solution best;
  Schedule best_schedule;
  double best_objective = 0;
  double construction_objective = 0;
  OperatorStats stats;
  std::vector<TraceRow> trace;
};

// The synchronized-resupply solver.
RunResult run(const Instance& inst, const AlnsConfig& cfg);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace mhc
