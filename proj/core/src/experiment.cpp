#include "mhc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "mhc/errors.hpp"

namespace mhc {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Batch configuration

std::string batch_to_json(const BatchConfig& cfg) {
  nlohmann::json doc;
  doc["seed"] = cfg.seed;
  doc["threads"] = cfg.threads;
  doc["alns"] = {{"iters", cfg.alns.iter_max},
                 {"segment", cfg.alns.segment_length},
                 {"gamma", cfg.alns.gamma},
                 {"temp0", cfg.alns.temp0},
                 {"cooling", cfg.alns.cooling},
                 {"max_no_improve", cfg.alns.max_no_improve},
                 {"destroy_fraction_min", cfg.alns.destroy_fraction_min},
                 {"destroy_fraction_max", cfg.alns.destroy_fraction_max},
                 {"scores", cfg.alns.scores}};
  doc["cells"] = nlohmann::json::array();
  for (const BatchCell& cell : cfg.cells) {
    nlohmann::json c;
    c["label"] = cell.label;
    c["runs"] = cell.runs;
    c["network"] = to_string(cell.gen.network_kind);
    c["n"] = cell.gen.n_nodes;
    c["mhc"] = cell.gen.num_mhc;
    c["products"] = cell.gen.num_products;
    c["capacity"] = cell.gen.capacity;
    c["demand_choices"] = cell.gen.demand_choices;
    c["service_time"] = cell.gen.service_time;
    c["resupply_time"] = cell.gen.resupply_time;
    c["truck_speed"] = cell.gen.truck_speed_factor;
    doc["cells"].push_back(std::move(c));
  }
  return doc.dump(2) + "\n";
}

BatchConfig batch_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("batch document: ") + e.what());
  }
  BatchConfig cfg;
  try {
    cfg.seed = doc.value("seed", std::uint64_t{1});
    cfg.threads = doc.value("threads", 0);
    if (doc.contains("alns")) {
      const auto& a = doc["alns"];
      cfg.alns.iter_max = a.value("iters", cfg.alns.iter_max);
      cfg.alns.segment_length = a.value("segment", cfg.alns.segment_length);
      cfg.alns.gamma = a.value("gamma", cfg.alns.gamma);
      cfg.alns.temp0 = a.value("temp0", cfg.alns.temp0);
      cfg.alns.cooling = a.value("cooling", cfg.alns.cooling);
      cfg.alns.max_no_improve = a.value("max_no_improve", cfg.alns.max_no_improve);
      cfg.alns.destroy_fraction_min =
          a.value("destroy_fraction_min", cfg.alns.destroy_fraction_min);
      cfg.alns.destroy_fraction_max =
          a.value("destroy_fraction_max", cfg.alns.destroy_fraction_max);
      cfg.alns.scores = a.value("scores", cfg.alns.scores);
    }
    for (const auto& c : doc.value("cells", nlohmann::json::array())) {
      BatchCell cell;
      cell.label = c.value("label", "");
      cell.runs = c.value("runs", 10);
      cell.gen.network_kind = network_kind_from_string(c.value("network", "R"));
      cell.gen.n_nodes = c.value("n", 30);
      cell.gen.num_mhc = c.value("mhc", 3);
      cell.gen.num_products = c.value("products", 2);
      cell.gen.capacity = c.value("capacity", 26.0);
      if (c.contains("demand_choices")) {
        cell.gen.demand_choices = c["demand_choices"].get<std::vector<double>>();
      }
      cell.gen.service_time = c.value("service_time", 20.0);
      cell.gen.resupply_time = c.value("resupply_time", 10.0);
      cell.gen.truck_speed_factor = c.value("truck_speed", 1.0);
      if (cell.label.empty()) {
        cell.label = to_string(cell.gen.network_kind) + "-" +
                     std::to_string(cell.gen.n_nodes) + "-" +
                     std::to_string(cell.gen.num_mhc);
      }
      cfg.cells.push_back(std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("batch document: ") + e.what());
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Batch execution

namespace {

Instance cell_instance(const BatchCell& cell, std::uint64_t instance_seed) {
  GeneratorConfig gen = cell.gen;
  gen.seed = instance_seed;
  return generate_instance(gen, synth_coordinates(gen));
}

struct Slot {
  int cell = 0;
  int run = 0;
};

std::vector<Slot> flatten(const BatchConfig& cfg) {
  std::vector<Slot> slots;
  for (std::size_t c = 0; c < cfg.cells.size(); ++c) {
    for (int r = 0; r < cfg.cells[c].runs; ++r) {
      slots.push_back({static_cast<int>(c), r});
    }
  }
  return slots;
}

}  // namespace

std::vector<RunRecord> run_experiment(const BatchConfig& cfg) {
  std::vector<Slot> slots = flatten(cfg);
  std::vector<RunRecord> records(slots.size());
  parallel_for(static_cast<int>(slots.size()), cfg.threads, [&](int i) {
    const BatchCell& cell = cfg.cells[slots[i].cell];
    RunRecord& rec = records[i];
    rec.cell = cell.label;
    rec.run = slots[i].run;
    rec.instance_seed = derive_seed(cfg.seed, 2 * slots[i].cell, slots[i].run);
    auto t0 = std::chrono::steady_clock::now();
    try {
      Instance inst = cell_instance(cell, rec.instance_seed);
      AlnsConfig alns = cfg.alns;
      alns.seed = derive_seed(cfg.seed, 2 * slots[i].cell + 1, slots[i].run);
      RunResult res = run(inst, alns);
      rec.n = inst.num_customers();
      rec.num_mhc = inst.num_mhc;
      rec.construction = res.construction_objective;
      rec.best = res.best_objective;
      rec.improvement = res.construction_objective > 0
                            ? (1.0 - res.best_objective / res.construction_objective) * 100.0
                            : 0.0;
      rec.latest_arrival = res.best_schedule.latest_arrival;
      rec.truck_time = res.best_schedule.truck_total_time;
      rec.distance = total_distance(res.best, inst);
      rec.feasible = validate_solution(inst, res.best, res.best_schedule).passed;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
  return records;
}

std::vector<ComparisonRecord> run_comparison(const BatchConfig& cfg) {
  std::vector<Slot> slots = flatten(cfg);
  std::vector<ComparisonRecord> records(slots.size());
  parallel_for(static_cast<int>(slots.size()), cfg.threads, [&](int i) {
    const BatchCell& cell = cfg.cells[slots[i].cell];
    ComparisonRecord& rec = records[i];
    rec.network = to_string(cell.gen.network_kind);
    if (cell.gen.capacity == 22) {
      rec.capacity_class = "T";
    } else if (cell.gen.capacity == 32) {
      rec.capacity_class = "E";
    } else {
      rec.capacity_class = fmt(cell.gen.capacity);
    }
    rec.num_mhc = cell.gen.num_mhc;
    rec.n = cell.gen.n_nodes;
    try {
      Instance inst =
          cell_instance(cell, derive_seed(cfg.seed, 2 * slots[i].cell, slots[i].run));
      AlnsConfig alns = cfg.alns;
      alns.seed = derive_seed(cfg.seed, 2 * slots[i].cell + 1, slots[i].run);
      rec.row = compare(inst, alns);
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });
  return records;
}

// ---------------------------------------------------------------------------
// Report writers

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  out << "cell,run,instance_seed,n,num_mhc,construction,best,improvement,"
         "latest_arrival,truck_time,distance,feasible,error,wall_seconds\n";
  for (const RunRecord& r : rows) {
    out << r.cell << ',' << r.run << ',' << r.instance_seed << ',' << r.n << ','
        << r.num_mhc << ',' << fmt(r.construction) << ',' << fmt(r.best) << ','
        << fmt(r.improvement) << ',' << fmt(r.latest_arrival) << ','
        << fmt(r.truck_time) << ',' << fmt(r.distance) << ',' << (r.feasible ? 1 : 0)
        << ',' << r.error << ',' << fmt(r.wall_seconds) << '\n';
  }
}

namespace {

struct CellGroup {
  std::string label;
  std::vector<const RunRecord*> rows;
};

std::vector<CellGroup> group_rows(const std::vector<RunRecord>& rows) {
  std::vector<CellGroup> groups;
  for (const RunRecord& r : rows) {
    if (groups.empty() || groups.back().label != r.cell) {
      groups.push_back({r.cell, {}});
    }
    groups.back().rows.push_back(&r);
  }
  return groups;
}

// Quartile with linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0;
  double idx = p * (static_cast<double>(sorted.size()) - 1);
  std::size_t lo = static_cast<std::size_t>(idx);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = idx - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  out << "cell,runs,failed,feasible,mean_construction,mean_best,mean_improvement,"
         "best_min,best_max,mean_wall_seconds\n";
  for (const CellGroup& g : group_rows(rows)) {
    int failed = 0, feasible = 0, ok = 0;
    double sum_con = 0, sum_best = 0, sum_imp = 0, sum_wall = 0;
    double best_min = 0, best_max = 0;
    for (const RunRecord* r : g.rows) {
      sum_wall += r->wall_seconds;
      if (!r->error.empty()) {
        ++failed;
        continue;
      }
      if (r->feasible) ++feasible;
      sum_con += r->construction;
      sum_best += r->best;
      sum_imp += r->improvement;
      if (ok == 0 || r->best < best_min) best_min = r->best;
      if (ok == 0 || r->best > best_max) best_max = r->best;
      ++ok;
    }
    double denom = ok > 0 ? ok : 1;
    out << g.label << ',' << g.rows.size() << ',' << failed << ',' << feasible << ','
        << fmt(sum_con / denom) << ',' << fmt(sum_best / denom) << ','
        << fmt(sum_imp / denom) << ',' << fmt(best_min) << ',' << fmt(best_max) << ','
        << fmt(sum_wall / static_cast<double>(g.rows.size())) << '\n';
  }
}

void write_boxplot_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  out << "cell,count,min,q1,median,q3,max\n";
  for (const CellGroup& g : group_rows(rows)) {
    std::vector<double> vals;
    for (const RunRecord* r : g.rows) {
      if (r->error.empty()) vals.push_back(r->best);
    }
    std::sort(vals.begin(), vals.end());
    if (vals.empty()) {
      out << g.label << ",0,,,,,\n";
      continue;
    }
    out << g.label << ',' << vals.size() << ',' << fmt(vals.front()) << ','
        << fmt(quantile(vals, 0.25)) << ',' << fmt(quantile(vals, 0.5)) << ','
        << fmt(quantile(vals, 0.75)) << ',' << fmt(vals.back()) << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRecord>& rows) {
  out << "network,capacity,num_mhc,n,td_sync,la_sync,td_mt,la_mt,"
         "distance_gap,arrival_gap\n";
  double sum_d = 0, sum_a = 0;
  double max_d = 0, max_a = 0, min_d = 0, min_a = 0;
  int ok = 0;
  for (const ComparisonRecord& r : rows) {
    if (!r.error.empty()) continue;
    out << r.network << ',' << r.capacity_class << ',' << r.num_mhc << ',' << r.n << ','
        << fmt(r.row.sync_distance) << ',' << fmt(r.row.sync_latest) << ','
        << fmt(r.row.mt_distance) << ',' << fmt(r.row.mt_latest) << ','
        << fmt(r.row.distance_gap) << ',' << fmt(r.row.arrival_gap) << '\n';
    if (ok == 0 || r.row.distance_gap > max_d) max_d = r.row.distance_gap;
    if (ok == 0 || r.row.arrival_gap > max_a) max_a = r.row.arrival_gap;
    if (ok == 0 || r.row.distance_gap < min_d) min_d = r.row.distance_gap;
    if (ok == 0 || r.row.arrival_gap < min_a) min_a = r.row.arrival_gap;
    sum_d += r.row.distance_gap;
    sum_a += r.row.arrival_gap;
    ++ok;
  }
  if (ok > 0) {
    out << "Avg.,,,,,,,," << fmt(sum_d / ok) << ',' << fmt(sum_a / ok) << '\n';
    out << "Max.,,,,,,,," << fmt(max_d) << ',' << fmt(max_a) << '\n';
    out << "Min.,,,,,,,," << fmt(min_d) << ',' << fmt(min_a) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Presets

BatchConfig comparison_grid(int runs_per_cell, std::uint64_t seed) {
  BatchConfig cfg;
  cfg.seed = seed;
  for (NetworkKind kind : {NetworkKind::R, NetworkKind::C, NetworkKind::RC}) {
    for (double capacity : {22.0, 32.0}) {
      for (int mhc : {3, 4}) {
        BatchCell cell;
        cell.label = to_string(kind) + (capacity == 22 ? "-T-" : "-E-") +
                     std::to_string(mhc);
        cell.runs = runs_per_cell;
        cell.gen.network_kind = kind;
        cell.gen.n_nodes = 30;
        cell.gen.num_mhc = mhc;
        cell.gen.num_products = 1;
        cell.gen.capacity = capacity;
        cell.gen.demand_choices = {5};
        cfg.cells.push_back(std::move(cell));
      }
    }
  }
  return cfg;
}

BatchConfig large_scale_grid(int runs_per_cell, std::uint64_t seed) {
  BatchConfig cfg;
  cfg.seed = seed;
  for (NetworkKind kind : {NetworkKind::R, NetworkKind::C, NetworkKind::RC}) {
    for (int nodes : {75, 100}) {
      for (int dm = 0; dm < 3; ++dm) {
        int mhc = (nodes == 75 ? 4 : 6) + dm;
        BatchCell cell;
        cell.label = to_string(kind) + "-" + std::to_string(nodes) + "-" +
                     std::to_string(mhc);
        cell.runs = runs_per_cell;
        cell.gen.network_kind = kind;
        cell.gen.n_nodes = nodes;
        cell.gen.num_mhc = mhc;
        cell.gen.num_products = 2;
        cfg.cells.push_back(std::move(cell));
      }
    }
  }
  return cfg;
}

}  // namespace mhc
