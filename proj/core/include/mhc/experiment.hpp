#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mhc/alns.hpp"
#include "mhc/instance.hpp"
#include "mhc/multitrip.hpp"

namespace mhc {

// Shortest decimal form with up to 9 significant digits; fixed format so the
// emitted CSV bytes do not depend on the platform's default float printing.
std::string fmt(double v);

// Runs fn(0..count-1) on a worker pool. Exceptions must be handled inside fn.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

struct BatchCell {
  std::string label;
  GeneratorConfig gen;  // family template; per-run seeds derive from the batch seed
  int runs = 10;
};

struct BatchConfig {
  std::vector<BatchCell> cells;
  AlnsConfig alns;
  std::uint64_t seed = 1;  // master seed for instance and solver streams
  int threads = 0;         // worker limit, 0 = hardware concurrency
};

std::string batch_to_json(const BatchConfig& cfg);
BatchConfig batch_from_json(const std::string& text);

struct RunRecord {
  std::string cell;
  int run = 0;  // index within the cell
  std::uint64_t instance_seed = 0;
  int n = 0;
  int num_mhc = 0;
  double construction = 0;
  double best = 0;
  double improvement = 0;  // percent below the construction objective
  double latest_arrival = 0;
  double truck_time = 0;
  double distance = 0;
  bool feasible = false;
  std::string error;       // nonempty when the run failed
  double wall_seconds = 0; // informational; varies between machines
};

// One solver run per (cell, run index); failures land in the error field and
// the batch keeps going.
std::vector<RunRecord> run_experiment(const BatchConfig& cfg);

struct ComparisonRecord {
  std::string network;
  std::string capacity_class;  // T for 22, E for 32, the number otherwise
  int num_mhc = 0;
  int n = 0;
  GapRow row;
  std::string error;
};

// Solves every cell instance with both models and collects the gaps.
std::vector<ComparisonRecord> run_comparison(const BatchConfig& cfg);

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& rows);
// Per-cell aggregates of the run records.
void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& rows);
// Five-number summary of best objectives per cell, box-plot source data.
void write_boxplot_csv(std::ostream& out, const std::vector<RunRecord>& rows);
// Gap rows plus Avg./Max./Min. footer over the gap columns.
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRecord>& rows);

// {R, C, RC} x {tight 22, excess 32} x {3, 4} vehicles, 30 nodes, one product
// with demand 5 everywhere.
BatchConfig comparison_grid(int runs_per_cell, std::uint64_t seed);

// {R, C, RC} x {75 nodes: 4..6, 100 nodes: 6..8} vehicles, two products.
BatchConfig large_scale_grid(int runs_per_cell, std::uint64_t seed);

}  // namespace mhc
