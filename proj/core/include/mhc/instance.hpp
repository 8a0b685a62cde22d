#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mhc {

struct Node {
  int id = 0;
  double x = 0;
  double y = 0;
};

using Matrix = std::vector<std::vector<double>>;

// One routing problem: a depot plus customers, a homogeneous fleet of mobile
// health clinics (MHCs) and a single resupply truck. Demands, matrices and
// service times are indexed by node id; row/entry 0 belongs to the depot and
// is all zero.
struct Instance {
  std::vector<Node> nodes;           // nodes[0] is the depot, ids contiguous 0..n
  Matrix demand;                     // demand[node][product]
  std::vector<double> service_time;  // per node, 0 at the depot
  Matrix mhc_travel;                 // t, Euclidean
  Matrix truck_travel;               // r = truck_speed_factor * t
  int num_mhc = 1;
  int num_products = 1;
  double capacity = 0;               // per-MHC load capacity
  double resupply_time = 0;          // duration of one resupply / depot reload
  double truck_speed_factor = 1.0;
  std::uint64_t seed = 0;            // generator seed, kept for provenance

  int num_customers() const { return static_cast<int>(nodes.size()) - 1; }
  double total_demand(int node) const;
};

enum class NetworkKind { R, C, RC };

std::string to_string(NetworkKind kind);
NetworkKind network_kind_from_string(const std::string& s);

struct GeneratorConfig {
  NetworkKind network_kind = NetworkKind::R;
  int n_nodes = 30;  // customers, excluding the depot
  int num_mhc = 3;
  int num_products = 2;
  double capacity = 26.0;
  std::vector<double> demand_choices = {4.0, 5.0};
  double service_time = 20.0;
  double resupply_time = 10.0;
  double truck_speed_factor = 1.0;
  std::uint64_t seed = 1;
};

// Reads the customer table of a Solomon-format file. Only the id/x/y columns
// are consumed; customer 0 becomes the depot. Nodes come back in file order.
std::vector<Node> parse_solomon(std::istream& in);
std::vector<Node> parse_solomon(const std::string& text);

// (mhc_travel, truck_travel) from coordinates; truck legs are scaled by rho.
std::pair<Matrix, Matrix> build_matrices(const std::vector<Node>& nodes, double rho);

// Synthetic coordinate layouts in the style of the R/C/RC network families.
// Deterministic in cfg.seed.
std::vector<Node> synth_coordinates(const GeneratorConfig& cfg);

// Full instance from a coordinate set: every customer demands one uniformly
// chosen amount of one uniformly chosen product.
Instance generate_instance(const GeneratorConfig& cfg, const std::vector<Node>& coords);

struct InstanceCheck {
  bool passed = true;
  std::vector<std::string> violations;
};

InstanceCheck validate_instance(const Instance& inst);

// Native JSON document (nodes, per-customer demand rows, service times,
// fleet/capacity/resupply parameters). Matrices are rebuilt on load.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace mhc
