// Command-line front end: generate instances, run the solvers and the
// exhaustive search, compare against the multi-trip baseline, aggregate
// operator statistics.
//
// Exit codes: 0 success, 1 usage, 2 bad data, 3 internal failure.

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mhc/alns.hpp"
#include "mhc/errors.hpp"
#include "mhc/experiment.hpp"
#include "mhc/instance.hpp"
#include "mhc/multitrip.hpp"
#include "mhc/oracle.hpp"

namespace {

constexpr std::array<const char*, mhc::kNumDestroy> kDestroyNames = {
    "random_node",  "longest_node_cost", "resupply_nodes",
    "wait_nodes",   "entire_route",      "longest_route",
    "after_resupply", "prior_resupply",  "historical"};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mhc::ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mhc::ValidationError("cannot write " + path);
  out << content;
}

struct AlnsFlags {
  mhc::AlnsConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--iters", cfg.iter_max, "search iterations");
    cmd->add_option("--segment", cfg.segment_length, "iterations per weight update");
    cmd->add_option("--gamma", cfg.gamma, "weight reaction factor");
    cmd->add_option("--temp0", cfg.temp0,
                    "start temperature (<= 0: 5% of the construction objective)");
    cmd->add_option("--cooling", cfg.cooling, "temperature factor per iteration");
    cmd->add_option("--max-no-improve", cfg.max_no_improve,
                    "iterations without a new best before restarting from it");
  }
};

std::string trace_to_json(const std::vector<mhc::TraceRow>& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const mhc::TraceRow& row : trace) {
    arr.push_back({{"iteration", row.iteration},
                   {"destroy_op", row.destroy_op},
                   {"repair_op", row.repair_op},
                   {"f_new", row.f_new},
                   {"f_current", row.f_current},
                   {"f_best", row.f_best},
                   {"accepted", row.accepted},
                   {"temperature", row.temperature}});
  }
  return arr.dump(2) + "\n";
}

std::string run_stats_json(const mhc::RunResult& res, const mhc::AlnsConfig& cfg) {
  nlohmann::json doc;
  doc["seed"] = cfg.seed;
  doc["iterations"] = cfg.iter_max;
  doc["construction_objective"] = res.construction_objective;
  doc["best_objective"] = res.best_objective;
  doc["latest_arrival"] = res.best_schedule.latest_arrival;
  doc["truck_time"] = res.best_schedule.truck_total_time;
  doc["stabilized"] = res.best_schedule.stabilized;
  doc["segments"] = res.stats.weight_history.size();
  doc["global_best_count"] = res.stats.global_best_count;
  doc["final_weights"] = res.stats.weight;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

struct GenerateCmd {
  std::string solomon;
  std::string network = "R";
  int nodes = 30;
  mhc::GeneratorConfig gen;
  std::string out = "instance.json";

  void attach(CLI::App* cmd) {
    cmd->add_option("--solomon", solomon, "take coordinates from this Solomon file");
    cmd->add_option("--network", network, "synthetic layout: R, C or RC")
        ->check(CLI::IsMember({"R", "C", "RC"}));
    cmd->add_option("--nodes", nodes, "number of customers");
    cmd->add_option("--mhc", gen.num_mhc, "fleet size");
    cmd->add_option("--products", gen.num_products, "number of products");
    cmd->add_option("--capacity", gen.capacity, "vehicle capacity");
    cmd->add_option("--demand", gen.demand_choices,
                    "demand amounts drawn uniformly per customer");
    cmd->add_option("--service", gen.service_time, "service duration per customer");
    cmd->add_option("--resupply", gen.resupply_time, "duration of one resupply");
    cmd->add_option("--truck-speed", gen.truck_speed_factor,
                    "truck travel time = factor * MHC travel time");
    cmd->add_option("--seed", gen.seed, "generator seed");
    cmd->add_option("--out", out, "output instance document");
  }

  int execute() {
    gen.network_kind = mhc::network_kind_from_string(network);
    gen.n_nodes = nodes;
    std::vector<mhc::Node> coords;
    if (!solomon.empty()) {
      coords = mhc::parse_solomon(read_file(solomon));
      if (static_cast<int>(coords.size()) > nodes + 1) coords.resize(nodes + 1);
      for (std::size_t i = 0; i < coords.size(); ++i) {
        coords[i].id = static_cast<int>(i);
      }
      gen.n_nodes = static_cast<int>(coords.size()) - 1;
    } else {
      coords = mhc::synth_coordinates(gen);
    }
    mhc::Instance inst = mhc::generate_instance(gen, coords);
    mhc::save_instance(inst, out);
    std::cout << "wrote " << out << " (" << inst.num_customers() << " customers, "
              << inst.num_mhc << " vehicles, " << inst.num_products << " products)\n";
    return 0;
  }
};

struct SolveCmd {
  std::string instance_path;
  std::string batch_path;
  AlnsFlags alns;
  std::string out = ".";
  std::string format = "csv";
  int threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("instance", instance_path, "instance document");
    cmd->add_option("--batch", batch_path,
                    "batch document; runs the whole batch with the search "
                    "settings stored in it");
    alns.attach(cmd);
    cmd->add_option("--threads", threads, "batch worker limit (0: all cores)");
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--format", format, "trace file format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  int execute() {
    namespace fs = std::filesystem;
    if (batch_path.empty() == instance_path.empty()) {
      std::cerr << "solve needs either an instance document or --batch\n";
      return 1;
    }
    fs::create_directories(out);
    if (!batch_path.empty()) {
      mhc::BatchConfig cfg = mhc::batch_from_json(read_file(batch_path));
      if (threads > 0) cfg.threads = threads;
      std::vector<mhc::RunRecord> records = mhc::run_experiment(cfg);
      {
        std::ofstream file(fs::path(out) / "runs.csv", std::ios::binary);
        mhc::write_runs_csv(file, records);
      }
      {
        std::ofstream file(fs::path(out) / "summary.csv", std::ios::binary);
        mhc::write_summary_csv(file, records);
      }
      {
        std::ofstream file(fs::path(out) / "boxplot.csv", std::ios::binary);
        mhc::write_boxplot_csv(file, records);
      }
      int failed = 0;
      for (const auto& rec : records) {
        if (!rec.error.empty()) {
          ++failed;
          std::cerr << "failed " << rec.cell << "#" << rec.run << ": " << rec.error
                    << "\n";
        }
      }
      std::cout << "ran " << records.size() << " solves";
      if (failed > 0) std::cout << " (" << failed << " failed)";
      std::cout << ", wrote runs.csv summary.csv boxplot.csv in " << out << "\n";
      return 0;
    }
    mhc::Instance inst = mhc::load_instance(instance_path);
    mhc::RunResult res = mhc::run(inst, alns.cfg);
    mhc::FeasibilityReport rep =
        mhc::validate_solution(inst, res.best, res.best_schedule);
    mhc::save_solution(res.best, res.best_schedule, (fs::path(out) / "solution.json").string());
    if (format == "json") {
      write_file((fs::path(out) / "trace.json").string(), trace_to_json(res.trace));
    } else {
      std::ofstream trace(fs::path(out) / "trace.csv", std::ios::binary);
      mhc::write_trace_csv(trace, res.trace);
    }
    write_file((fs::path(out) / "stats.json").string(), run_stats_json(res, alns.cfg));
    std::cout << "objective " << mhc::fmt(res.best_objective) << " (construction "
              << mhc::fmt(res.construction_objective) << "), feasible "
              << (rep.passed ? "yes" : "NO") << "\n";
    return rep.passed ? 0 : 3;
  }
};

struct OracleCmd {
  std::string instance_path;
  std::string out = "oracle_solution.json";

  void attach(CLI::App* cmd) {
    cmd->add_option("instance", instance_path, "instance document")->required();
    cmd->add_option("--out", out, "output solution document");
  }

  int execute() {
    mhc::Instance inst = mhc::load_instance(instance_path);
    mhc::ExactResult res = mhc::exact_solve(inst);
    mhc::save_solution(res.solution, res.schedule, out);
    std::cout << "objective " << mhc::fmt(res.objective) << " over " << res.routings
              << " routings\n";
    return 0;
  }
};

struct CompareCmd {
  std::vector<std::string> instance_paths;
  bool grid = false;
  int runs = 10;
  AlnsFlags alns;
  int threads = 0;
  std::string out = "comparison.csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("instances", instance_paths, "instance documents");
    cmd->add_flag("--grid", grid,
                  "run the 12-cell 30-node grid instead of explicit instances");
    cmd->add_option("--runs", runs, "instances per grid cell");
    alns.attach(cmd);
    cmd->add_option("--threads", threads, "worker limit (0: all cores)");
    cmd->add_option("--out", out, "comparison table");
  }

  int execute() {
    std::vector<mhc::ComparisonRecord> records;
    if (grid) {
      mhc::BatchConfig cfg = mhc::comparison_grid(runs, alns.cfg.seed);
      cfg.alns = alns.cfg;
      cfg.threads = threads;
      records = mhc::run_comparison(cfg);
    } else {
      if (instance_paths.empty()) {
        std::cerr << "compare needs instance documents or --grid\n";
        return 1;
      }
      for (std::size_t i = 0; i < instance_paths.size(); ++i) {
        mhc::Instance inst = mhc::load_instance(instance_paths[i]);
        mhc::ComparisonRecord rec;
        rec.network = "-";
        if (inst.capacity == 22) {
          rec.capacity_class = "T";
        } else if (inst.capacity == 32) {
          rec.capacity_class = "E";
        } else {
          rec.capacity_class = mhc::fmt(inst.capacity);
        }
        rec.num_mhc = inst.num_mhc;
        rec.n = inst.num_customers();
        mhc::AlnsConfig cfg = alns.cfg;
        cfg.seed = mhc::derive_seed(alns.cfg.seed, 0xc0, i);
        rec.row = mhc::compare(inst, cfg);
        records.push_back(std::move(rec));
      }
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw mhc::ValidationError("cannot write " + out);
    mhc::write_comparison_csv(file, records);
    int failed = 0;
    for (const auto& rec : records) {
      if (!rec.error.empty()) {
        ++failed;
        std::cerr << "failed: " << rec.error << "\n";
      }
    }
    std::cout << "wrote " << out << " (" << records.size() - failed << " rows";
    if (failed > 0) std::cout << ", " << failed << " failed";
    std::cout << ")\n";
    return 0;
  }
};

struct StatsCmd {
  std::vector<std::string> stats_paths;
  std::string out;
  std::string format = "csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("stats", stats_paths, "per-run stats documents")->required();
    cmd->add_option("--out", out, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  int execute() {
    std::array<long, mhc::kNumDestroy> totals{};
    for (const std::string& path : stats_paths) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(path));
      } catch (const nlohmann::json::exception& e) {
        throw mhc::ParseError(path + ": " + e.what());
      }
      auto counts = doc.at("global_best_count").get<std::vector<long>>();
      if (counts.size() != mhc::kNumDestroy) {
        throw mhc::ValidationError(path + ": expected " +
                                   std::to_string(mhc::kNumDestroy) +
                                   " operator counts");
      }
      for (std::size_t d = 0; d < counts.size(); ++d) totals[d] += counts[d];
    }
    long total = 0;
    for (long c : totals) total += c;

    std::ostringstream body;
    if (format == "json") {
      nlohmann::json doc;
      doc["runs"] = stats_paths.size();
      doc["global_best_total"] = total;
      doc["operators"] = nlohmann::json::array();
      for (int d = 0; d < mhc::kNumDestroy; ++d) {
        doc["operators"].push_back(
            {{"op", d + 1},
             {"name", kDestroyNames[d]},
             {"global_best", totals[d]},
             {"share",
              total > 0 ? 100.0 * static_cast<double>(totals[d]) / total : 0.0}});
      }
      body << doc.dump(2) << "\n";
    } else {
      body << "op,name,global_best,share\n";
      for (int d = 0; d < mhc::kNumDestroy; ++d) {
        double share = total > 0 ? 100.0 * static_cast<double>(totals[d]) / total : 0.0;
        body << d + 1 << ',' << kDestroyNames[d] << ',' << totals[d] << ','
             << mhc::fmt(share) << '\n';
      }
    }
    if (out.empty()) {
      std::cout << body.str();
    } else {
      write_file(out, body.str());
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Routing for mobile health clinics with en-route resupply"};
  app.require_subcommand(1);

  GenerateCmd generate;
  generate.attach(app.add_subcommand("generate", "write an instance document"));
  SolveCmd solve;
  solve.attach(app.add_subcommand("solve", "run the adaptive search"));
  OracleCmd oracle;
  oracle.attach(app.add_subcommand("oracle", "exhaustive search on a small instance"));
  CompareCmd compare;
  compare.attach(
      app.add_subcommand("compare", "synchronized model against the multi-trip model"));
  StatsCmd stats;
  stats.attach(app.add_subcommand("stats", "aggregate operator contributions"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("generate")) return generate.execute();
    if (app.got_subcommand("solve")) return solve.execute();
    if (app.got_subcommand("oracle")) return oracle.execute();
    if (app.got_subcommand("compare")) return compare.execute();
    if (app.got_subcommand("stats")) return stats.execute();
  } catch (const mhc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mhc::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mhc::SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
