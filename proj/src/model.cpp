#include "aldvrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "aldvrp/errors.hpp"

namespace aldvrp {

void VehicleParams::validate() const {
  auto check = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(what);
  };
  check(std::isfinite(mass) && mass > 0.0, "vehicle.M must be > 0");
  check(std::isfinite(load_capacity) && load_capacity > 0.0, "vehicle.Qe must be > 0");
  check(std::isfinite(battery_capacity) && battery_capacity > 0.0, "vehicle.Qb must be > 0");
  check(std::isfinite(coeff_r) && coeff_r >= 0.0, "vehicle.r must be >= 0");
  check(std::isfinite(coeff_s) && coeff_s >= 0.0, "vehicle.s must be >= 0");
  check(std::isfinite(coeff_c) && coeff_c >= 0.0, "vehicle.c must be >= 0");
  check(std::isfinite(gamma) && gamma >= 0.0, "vehicle.gamma must be >= 0");
}

SpeedProfile::SpeedProfile(std::vector<double> breakpoints, std::vector<double> speeds)
    : breakpoints_(std::move(breakpoints)), speeds_(std::move(speeds)) {
  if (breakpoints_.empty()) throw ValidationError("profile needs at least one breakpoint");
  if (breakpoints_.size() != speeds_.size()) {
    throw ValidationError("profile breakpoints and speeds differ in length");
  }
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (!std::isfinite(breakpoints_[k]) || !std::isfinite(speeds_[k])) {
      throw ValidationError("profile values must be finite");
    }
    if (speeds_[k] < 0.0) throw ValidationError("speed < 0");
    if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
      throw ValidationError("profile breakpoints must be strictly increasing");
    }
  }
}

double SpeedProfile::acceleration(std::size_t m) const {
  if (m == 0 || m >= breakpoints_.size()) throw std::out_of_range("no such profile interval");
  return (speeds_[m] - speeds_[m - 1]) / (breakpoints_[m] - breakpoints_[m - 1]);
}

std::size_t SpeedProfile::piece_index(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) - breakpoints_.begin());
}

SpeedProfile::Piece SpeedProfile::piece(std::size_t k) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t size = breakpoints_.size();
  if (k == 0) return {-inf, breakpoints_.front(), speeds_.front(), 0.0};
  if (k >= size) return {breakpoints_.back(), inf, speeds_.back(), 0.0};
  return {breakpoints_[k - 1], breakpoints_[k], speeds_[k - 1], acceleration(k)};
}

double SpeedProfile::speed_at(double t) const {
  const Piece p = piece(piece_index(t));
  if (p.accel == 0.0) return p.v_start;
  return std::max(0.0, p.v_start + p.accel * (t - p.t_start));
}

Instance::Instance(std::vector<Node> nodes, std::vector<double> distances,
                   std::vector<SpeedProfile> profiles, std::vector<int> assignment,
                   VehicleParams vehicle, int fleet_size, double horizon)
    : nodes_(std::move(nodes)),
      distances_(std::move(distances)),
      profiles_(std::move(profiles)),
      assignment_(std::move(assignment)),
      vehicle_(vehicle),
      fleet_size_(fleet_size),
      horizon_(horizon) {
  validate();
}

double Instance::total_demand() const {
  return std::accumulate(nodes_.begin(), nodes_.end(), 0.0,
                         [](double acc, const Node& v) { return acc + v.demand; });
}

void Instance::validate() const {
  const std::size_t count = nodes_.size();
  if (count < 3) throw ValidationError("instance needs at least one customer");
  for (std::size_t i = 0; i < count; ++i) {
    const Node& v = nodes_[i];
    if (v.id != static_cast<int>(i)) throw ValidationError("nodes[].id must equal its position");
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw ValidationError("node coordinates must be finite");
    const bool depot = i == 0 || i + 1 == count;
    if (depot && v.demand != 0.0) throw ValidationError("depot demand must be 0");
    if (!depot && !(v.demand > 0.0 && std::isfinite(v.demand))) {
      throw ValidationError("customer demand must be > 0");
    }
  }
  if (distances_.size() != count * count) throw ValidationError("distances must be (n+2) x (n+2)");
  if (assignment_.size() != count * count) throw ValidationError("profiles.assignment must be (n+2) x (n+2)");
  if (profiles_.empty()) throw ValidationError("at least one speed profile is required");
  const int end = static_cast<int>(count) - 1;
  for (int i = 0; i <= end; ++i) {
    for (int j = 0; j <= end; ++j) {
      const double d = distance(i, j);
      const int cls = assignment_[index(i, j)];
      if (!std::isfinite(d) || d < 0.0) throw ValidationError("distances must be finite and >= 0");
      if (cls < 0 || static_cast<std::size_t>(cls) >= profiles_.size()) {
        throw ValidationError("profiles.assignment index out of range");
      }
      // Arcs leave V \ {n+1} and enter V \ {0}; the two depot copies share a
      // location, so only the empty-route arc 0 -> n+1 may have zero length.
      const bool arc = i != end && j != 0 && i != j;
      if (arc && !(i == 0 && j == end) && !(d > 0.0)) {
        throw ValidationError("distance d_ij must be > 0 for i != j");
      }
    }
  }
  vehicle_.validate();
  if (fleet_size_ < 1) throw ValidationError("fleet_size must be >= 1");
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) throw ValidationError("horizon must be > 0");
  if (total_demand() > fleet_size_ * vehicle_.load_capacity) {
    throw ValidationError("total demand exceeds fleet_size * Qe");
  }
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + where + "." + key + "'");
  return *it;
}

double number(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number()) throw ParseError("field '" + where + "." + key + "' must be a number");
  return v.get<double>();
}

int integer(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) throw ParseError("field '" + where + "." + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const Json& v, const std::string& name) {
  if (!v.is_array()) throw ParseError("field '" + name + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw ParseError("field '" + name + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

// Accepts either a single list (one profile class) or a list of lists.
std::vector<std::vector<double>> number_lists(const Json& v, const std::string& name) {
  if (!v.is_array()) throw ParseError("field '" + name + "' must be an array");
  if (!v.empty() && v.front().is_number()) return {numbers(v, name)};
  std::vector<std::vector<double>> out;
  for (const auto& row : v) out.push_back(numbers(row, name));
  return out;
}

template <typename T>
std::vector<T> square_matrix(const Json& v, std::size_t size, const std::string& name) {
  if (!v.is_array() || v.size() != size) {
    throw ParseError("field '" + name + "' must have " + std::to_string(size) + " rows");
  }
  std::vector<T> out;
  out.reserve(size * size);
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != size) {
      throw ParseError("field '" + name + "' rows must have " + std::to_string(size) + " entries");
    }
    for (const auto& x : row) {
      if constexpr (std::is_integral_v<T>) {
        if (!x.is_number_integer()) throw ParseError("field '" + name + "' must hold integers");
      } else {
        if (!x.is_number()) throw ParseError("field '" + name + "' must hold numbers");
      }
      out.push_back(x.get<T>());
    }
  }
  return out;
}

Json as_float(double v) { return Json(static_cast<double>(v)); }

}  // namespace

Json instance_to_json(const Instance& instance) {
  Json doc = Json::object();
  Json nodes = Json::array();
  for (const Node& v : instance.nodes()) {
    nodes.push_back({{"id", v.id}, {"x", as_float(v.x)}, {"y", as_float(v.y)},
                     {"demand", as_float(v.demand)}});
  }
  doc["nodes"] = std::move(nodes);

  const int size = instance.node_count();
  Json dist = Json::array();
  Json assign = Json::array();
  for (int i = 0; i < size; ++i) {
    Json drow = Json::array();
    Json arow = Json::array();
    for (int j = 0; j < size; ++j) {
      drow.push_back(as_float(instance.distance(i, j)));
      arow.push_back(instance.profile_class(i, j));
    }
    dist.push_back(std::move(drow));
    assign.push_back(std::move(arow));
  }
  doc["distances"] = std::move(dist);

  Json bps = Json::array();
  Json spd = Json::array();
  for (const SpeedProfile& p : instance.profiles()) {
    Json b = Json::array();
    Json s = Json::array();
    for (double t : p.breakpoints()) b.push_back(as_float(t));
    for (double v : p.speeds()) s.push_back(as_float(v));
    bps.push_back(std::move(b));
    spd.push_back(std::move(s));
  }
  doc["profiles"] = {{"breakpoints", std::move(bps)}, {"speeds", std::move(spd)},
                     {"assignment", std::move(assign)}};

  const VehicleParams& p = instance.vehicle();
  doc["vehicle"] = {{"M", as_float(p.mass)},       {"Qe", as_float(p.load_capacity)},
                    {"Qb", as_float(p.battery_capacity)}, {"r", as_float(p.coeff_r)},
                    {"s", as_float(p.coeff_s)},    {"c", as_float(p.coeff_c)},
                    {"gamma", as_float(p.gamma)}};
  doc["fleet_size"] = instance.fleet_size();
  doc["horizon"] = as_float(instance.horizon());
  return doc;
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  const Json& jnodes = field(doc, "nodes", "instance");
  if (!jnodes.is_array()) throw ParseError("field 'instance.nodes' must be an array");
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    const Json& v = jnodes[i];
    nodes.push_back({integer(v, "id", where), number(v, "x", where), number(v, "y", where),
                     number(v, "demand", where)});
  }
  const std::size_t size = nodes.size();
  auto distances = square_matrix<double>(field(doc, "distances", "instance"), size, "distances");

  const Json& jprof = field(doc, "profiles", "instance");
  auto bps = number_lists(field(jprof, "breakpoints", "profiles"), "profiles.breakpoints");
  auto spd = number_lists(field(jprof, "speeds", "profiles"), "profiles.speeds");
  if (bps.size() != spd.size()) {
    throw ParseError("field 'profiles.speeds' must match 'profiles.breakpoints' in count");
  }
  std::vector<SpeedProfile> profiles;
  for (std::size_t k = 0; k < bps.size(); ++k) profiles.emplace_back(bps[k], spd[k]);

  std::vector<int> assignment;
  const Json& jassign = field(jprof, "assignment", "profiles");
  if (jassign.is_number_integer()) {
    assignment.assign(size * size, jassign.get<int>());
  } else {
    assignment = square_matrix<int>(jassign, size, "profiles.assignment");
  }

  const Json& jv = field(doc, "vehicle", "instance");
  VehicleParams vehicle;
  vehicle.mass = number(jv, "M", "vehicle");
  vehicle.load_capacity = number(jv, "Qe", "vehicle");
  vehicle.battery_capacity = number(jv, "Qb", "vehicle");
  vehicle.coeff_r = number(jv, "r", "vehicle");
  vehicle.coeff_s = number(jv, "s", "vehicle");
  vehicle.coeff_c = number(jv, "c", "vehicle");
  vehicle.gamma = number(jv, "gamma", "vehicle");

  return Instance(std::move(nodes), std::move(distances), std::move(profiles),
                  std::move(assignment), vehicle, integer(doc, "fleet_size", "instance"),
                  number(doc, "horizon", "instance"));
}

std::string instance_to_string(const Instance& instance) {
  return dump_json(instance_to_json(instance)) + "\n";
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write instance file " + path.string());
  out << instance_to_string(instance);
}

}  // namespace aldvrp
