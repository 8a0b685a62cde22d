#include "mhc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mhc/errors.hpp"
#include "mhc/rng.hpp"

namespace mhc {

using json = nlohmann::json;

double Instance::total_demand(int node) const {
  double sum = 0;
  for (double d : demand[node]) sum += d;
  return sum;
}

std::string to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::R: return "R";
    case NetworkKind::C: return "C";
    case NetworkKind::RC: return "RC";
  }
  return "?";
}

NetworkKind network_kind_from_string(const std::string& s) {
  if (s == "R") return NetworkKind::R;
  if (s == "C") return NetworkKind::C;
  if (s == "RC") return NetworkKind::RC;
  throw ValidationError("unknown network kind: " + s);
}

// ---------------------------------------------------------------------------
// Solomon parsing

namespace {

bool parse_double(const std::string& tok, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(tok, &used);
    return used == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::vector<Node> parse_solomon(std::istream& in) {
  std::vector<Node> nodes;
  std::string line;
  int line_no = 0;
  bool in_customers = false;
  bool header_skipped = false;
  std::vector<int> seen;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;

    if (!in_customers) {
      if (toks[0] == "CUSTOMER") in_customers = true;
      continue;
    }
    if (!header_skipped && toks[0].rfind("CUST", 0) == 0) {
      header_skipped = true;
      continue;
    }

    double id_val, x, y;
    if (toks.size() < 3 || !parse_double(toks[0], id_val) || !parse_double(toks[1], x) ||
        !parse_double(toks[2], y)) {
      throw ParseError("malformed customer row", line_no);
    }
    int id = static_cast<int>(id_val);
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) {
      throw ValidationError("duplicate customer id " + std::to_string(id));
    }
    seen.push_back(id);
    nodes.push_back({id, x, y});
  }

  if (!in_customers) throw ParseError("missing CUSTOMER header");
  return nodes;
}

std::vector<Node> parse_solomon(const std::string& text) {
  std::istringstream in(text);
  return parse_solomon(in);
}

// ---------------------------------------------------------------------------
// Matrices and generation

std::pair<Matrix, Matrix> build_matrices(const std::vector<Node>& nodes, double rho) {
  const std::size_t n = nodes.size();
  Matrix t(n, std::vector<double>(n, 0.0));
  Matrix r(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dij = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
      t[i][j] = t[j][i] = dij;
      r[i][j] = r[j][i] = rho * dij;
    }
  }
  return {std::move(t), std::move(r)};
}

std::vector<Node> synth_coordinates(const GeneratorConfig& cfg) {
  Rng rng(derive_seed(cfg.seed, 0x10ca7e));
  const int n = cfg.n_nodes;
  std::vector<Node> nodes;
  nodes.reserve(n + 1);
  nodes.push_back({0, 50.0, 50.0});

  int clustered = 0;
  switch (cfg.network_kind) {
    case NetworkKind::R: clustered = 0; break;
    case NetworkKind::C: clustered = n; break;
    case NetworkKind::RC: clustered = n / 2; break;
  }

  // Cluster centres first so the layout of the clustered part does not depend
  // on how many random customers follow. Enough centres that a route spans
  // several of them, inside the middle band of the region.
  int num_clusters = std::max(2, clustered / 5);
  std::vector<std::pair<double, double>> centres;
  for (int c = 0; c < num_clusters; ++c) {
    centres.push_back({uniform_between(rng, 20, 80), uniform_between(rng, 20, 80)});
  }

  auto clip = [](double v) { return std::min(100.0, std::max(0.0, v)); };
  std::normal_distribution<double> spread(0.0, 4.0);
  for (int i = 1; i <= n; ++i) {
    if (i <= clustered) {
      auto [cx, cy] = centres[uniform_index(rng, centres.size())];
      nodes.push_back({i, clip(cx + spread(rng)), clip(cy + spread(rng))});
    } else {
      nodes.push_back({i, uniform_between(rng, 0, 100), uniform_between(rng, 0, 100)});
    }
  }
  return nodes;
}

Instance generate_instance(const GeneratorConfig& cfg, const std::vector<Node>& coords) {
  if (coords.empty()) throw ValidationError("no coordinates given");
  const int n = static_cast<int>(coords.size()) - 1;
  for (int i = 0; i <= n; ++i) {
    if (coords[i].id != i) {
      throw ValidationError("coordinate ids must be contiguous 0..n with the depot first");
    }
  }
  if (cfg.num_mhc < 1 || cfg.num_mhc > n) {
    throw ValidationError("fleet size must be between 1 and the number of customers");
  }
  if (cfg.num_products < 1) throw ValidationError("need at least one product");
  if (cfg.demand_choices.empty()) throw ValidationError("no demand choices");
  double max_choice = *std::max_element(cfg.demand_choices.begin(), cfg.demand_choices.end());
  if (max_choice > cfg.capacity) {
    throw ValidationError("capacity smaller than the largest single demand; instance unservable");
  }

  Instance inst;
  inst.nodes = coords;
  inst.num_mhc = cfg.num_mhc;
  inst.num_products = cfg.num_products;
  inst.capacity = cfg.capacity;
  inst.resupply_time = cfg.resupply_time;
  inst.truck_speed_factor = cfg.truck_speed_factor;
  inst.seed = cfg.seed;
  inst.demand.assign(n + 1, std::vector<double>(cfg.num_products, 0.0));
  inst.service_time.assign(n + 1, cfg.service_time);
  inst.service_time[0] = 0.0;

  Rng rng(derive_seed(cfg.seed, 0xd34a4d));
  for (int i = 1; i <= n; ++i) {
    double amount = cfg.demand_choices[uniform_index(rng, cfg.demand_choices.size())];
    int product = static_cast<int>(uniform_index(rng, cfg.num_products));
    inst.demand[i][product] = amount;
  }

  auto [t, r] = build_matrices(coords, cfg.truck_speed_factor);
  inst.mhc_travel = std::move(t);
  inst.truck_travel = std::move(r);
  return inst;
}

// ---------------------------------------------------------------------------
// Validation

InstanceCheck validate_instance(const Instance& inst) {
  InstanceCheck check;
  auto fail = [&](const std::string& msg) {
    check.passed = false;
    check.violations.push_back(msg);
  };

  const int n = inst.num_customers();
  if (n < 1) {
    fail("instance has no customers");
    return check;
  }
  for (int i = 0; i <= n; ++i) {
    if (inst.nodes[i].id != i) {
      fail("node ids not contiguous at index " + std::to_string(i));
      break;
    }
  }
  if (inst.num_mhc < 1 || inst.num_mhc > n) fail("fleet size out of range");
  if (inst.capacity <= 0) fail("capacity must be positive");
  if (inst.resupply_time < 0) fail("negative resupply time");
  if (inst.num_products < 1) fail("need at least one product");

  if (inst.demand.size() != static_cast<std::size_t>(n + 1)) {
    fail("demand matrix has wrong row count");
    return check;
  }
  for (int i = 0; i <= n; ++i) {
    if (inst.demand[i].size() != static_cast<std::size_t>(inst.num_products)) {
      fail("demand row width mismatch at node " + std::to_string(i));
      return check;
    }
    for (double d : inst.demand[i]) {
      if (d < 0) fail("negative demand at node " + std::to_string(i));
      if (std::abs(d - std::round(d)) > 1e-9) {
        fail("non-integral demand at node " + std::to_string(i));
      }
    }
    if (i > 0 && inst.total_demand(i) > inst.capacity + 1e-9) {
      fail("unservable node " + std::to_string(i) + ": demand exceeds capacity");
    }
  }

  if (inst.service_time.size() != static_cast<std::size_t>(n + 1)) {
    fail("service time vector has wrong length");
  } else {
    for (int i = 0; i <= n; ++i) {
      if (inst.service_time[i] < 0) fail("negative service time at node " + std::to_string(i));
    }
  }

  auto check_matrix = [&](const Matrix& m, const std::string& name) {
    if (m.size() != static_cast<std::size_t>(n + 1)) {
      fail(name + " matrix has wrong size");
      return;
    }
    for (int i = 0; i <= n; ++i) {
      if (m[i].size() != static_cast<std::size_t>(n + 1)) {
        fail(name + " matrix has wrong size");
        return;
      }
      if (std::abs(m[i][i]) > 1e-9) fail(name + " matrix has nonzero diagonal");
      for (int j = 0; j <= n; ++j) {
        if (m[i][j] < 0) fail(name + " matrix has negative entry");
        if (std::abs(m[i][j] - m[j][i]) > 1e-9) {
          fail(name + " matrix not symmetric at (" + std::to_string(i) + "," +
               std::to_string(j) + ")");
          return;
        }
      }
    }
  };
  check_matrix(inst.mhc_travel, "mhc travel");
  check_matrix(inst.truck_travel, "truck travel");

  return check;
}

// ---------------------------------------------------------------------------
// JSON document

std::string instance_to_json(const Instance& inst) {
  const int n = inst.num_customers();
  json doc;
  json nodes = json::array();
  for (const Node& nd : inst.nodes) {
    nodes.push_back({{"id", nd.id}, {"x", nd.x}, {"y", nd.y}});
  }
  doc["nodes"] = std::move(nodes);
  json demand = json::array();
  json service = json::array();
  for (int i = 1; i <= n; ++i) {
    demand.push_back(inst.demand[i]);
    service.push_back(inst.service_time[i]);
  }
  doc["demand"] = std::move(demand);
  doc["service_time"] = std::move(service);
  doc["capacity"] = inst.capacity;
  doc["resupply_time"] = inst.resupply_time;
  doc["num_mhc"] = inst.num_mhc;
  doc["truck_speed_factor"] = inst.truck_speed_factor;
  doc["seed"] = inst.seed;
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad instance document: ") + e.what());
  }
  try {
    Instance inst;
    for (const auto& nd : doc.at("nodes")) {
      inst.nodes.push_back({nd.at("id").get<int>(), nd.at("x").get<double>(),
                            nd.at("y").get<double>()});
    }
    const int n = static_cast<int>(inst.nodes.size()) - 1;
    if (n < 1) throw ParseError("instance document has no customers");
    inst.demand.assign(n + 1, {});
    const auto& demand = doc.at("demand");
    if (static_cast<int>(demand.size()) != n) {
      throw ParseError("demand rows do not match customer count");
    }
    inst.num_products = demand.empty() ? 1 : static_cast<int>(demand[0].size());
    inst.demand[0].assign(inst.num_products, 0.0);
    for (int i = 1; i <= n; ++i) {
      inst.demand[i] = demand[i - 1].get<std::vector<double>>();
    }
    const auto& service = doc.at("service_time");
    if (static_cast<int>(service.size()) != n) {
      throw ParseError("service times do not match customer count");
    }
    inst.service_time.assign(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) inst.service_time[i] = service[i - 1].get<double>();
    inst.capacity = doc.at("capacity").get<double>();
    inst.resupply_time = doc.at("resupply_time").get<double>();
    inst.num_mhc = doc.at("num_mhc").get<int>();
    inst.truck_speed_factor = doc.at("truck_speed_factor").get<double>();
    inst.seed = doc.value("seed", std::uint64_t{0});
    auto [t, r] = build_matrices(inst.nodes, inst.truck_speed_factor);
    inst.mhc_travel = std::move(t);
    inst.truck_travel = std::move(r);
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad instance document: ") + e.what());
  }
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << instance_to_json(inst);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

}  // namespace mhc
