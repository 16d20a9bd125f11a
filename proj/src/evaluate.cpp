#include "aldvrp/evaluate.hpp"

#include <algorithm>
#include <sstream>

#include "aldvrp/errors.hpp"

namespace aldvrp {

std::string_view load_model_name(LoadModel model) {
  switch (model) {
    case LoadModel::RealTime: return "realtime";
    case LoadModel::NoLoad: return "noload";
    case LoadModel::InitialLoad: return "iniload";
  }
  return "?";
}

std::optional<LoadModel> parse_load_model(std::string_view name) {
  if (name == "realtime" || name == "real-time") return LoadModel::RealTime;
  if (name == "noload" || name == "no-load") return LoadModel::NoLoad;
  if (name == "iniload" || name == "ini-load" || name == "initial-load") {
    return LoadModel::InitialLoad;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> Solution::visit_lists() const {
  std::vector<std::vector<int>> out;
  out.reserve(routes.size());
  for (const Route& r : routes) out.push_back(r.visits);
  return out;
}

Route evaluate_route(std::span<const int> visits, const Instance& instance,
                     const EvalOptions& options) {
  const VehicleParams& vp = instance.vehicle();
  const bool approx = options.energy_mode == EnergyMode::MinlpApprox;
  Route route;
  route.visits.assign(visits.begin(), visits.end());
  for (int c : visits) {
    if (c < 1 || c > instance.customer_count()) {
      throw ValidationError("route visits unknown customer " + std::to_string(c));
    }
    route.demand += instance.demand(c);
  }
  const double initial = route.demand;
  double on_board = initial;
  double t = 0.0;
  int from = instance.start_depot();
  auto drive = [&](int to) {
    auto trav = traverse_arc(instance.profile(from, to), instance.distance(from, to), t, vp,
                             instance.horizon(), approx);
    if (!trav) throw HorizonExceeded();
    route.departures.push_back(t);
    route.loads.push_back(on_board);
    route.energy += trav->terms(options.energy_mode)
                        .at_load(vp.mass, model_load(options.load_model, on_board, initial));
    route.realtime_energy += trav->exact.at_load(vp.mass, on_board);
    route.cumulative_energy.push_back(route.energy);
    from = to;
    return trav->arrival;
  };
  for (int c : visits) {
    const double arrival = drive(c);
    t = arrival + options.service_time;
    on_board -= instance.demand(c);
    if (on_board < 0.0) on_board = 0.0;  // rounding in the running sum
  }
  route.end_time = drive(instance.end_depot());
  return route;
}

Solution make_solution(const std::vector<std::vector<int>>& routes, const Instance& instance,
                       const EvalOptions& options) {
  Solution sol;
  sol.load_model = options.load_model;
  sol.energy_mode = options.energy_mode;
  int vehicle = 0;
  for (const auto& visits : routes) {
    if (visits.empty()) continue;
    Route r = evaluate_route(visits, instance, options);
    r.vehicle = vehicle++;
    sol.objective += r.energy;
    sol.routes.push_back(std::move(r));
  }
  return sol;
}

std::string_view violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnknownCustomer: return "unknown-customer";
    case ViolationKind::DuplicateVisit: return "duplicate-visit";
    case ViolationKind::MissingCustomer: return "missing-customer";
    case ViolationKind::Capacity: return "capacity";
    case ViolationKind::Battery: return "battery";
    case ViolationKind::FleetSize: return "fleet-size";
    case ViolationKind::Horizon: return "horizon";
  }
  return "?";
}

std::string FeasibilityReport::summary() const {
  if (violations.empty()) return "feasible";
  std::ostringstream out;
  out << violations.size() << " violation(s):";
  for (const Violation& v : violations) out << "\n  [" << violation_name(v.kind) << "] " << v.message;
  return out.str();
}

FeasibilityReport check_feasible(const Solution& solution, const Instance& instance,
                                 double service_time) {
  FeasibilityReport report;
  auto add = [&](ViolationKind kind, int vehicle, int customer, std::string msg) {
    report.violations.push_back({kind, vehicle, customer, std::move(msg)});
  };
  const int n = instance.customer_count();
  const VehicleParams& vp = instance.vehicle();
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  int used = 0;
  for (const Route& r : solution.routes) {
    const std::string who = "vehicle " + std::to_string(r.vehicle);
    bool known = true;
    for (int c : r.visits) {
      if (c < 1 || c > n) {
        add(ViolationKind::UnknownCustomer, r.vehicle, c, who + " visits unknown node " + std::to_string(c));
        known = false;
        continue;
      }
      if (++seen[static_cast<std::size_t>(c)] == 2) {
        add(ViolationKind::DuplicateVisit, r.vehicle, c,
            "customer " + std::to_string(c) + " visited more than once");
      }
    }
    if (r.visits.empty()) continue;
    ++used;
    if (!known) continue;
    EvalOptions exact;
    exact.service_time = service_time;
    try {
      const Route re = evaluate_route(r.visits, instance, exact);
      if (re.demand > vp.load_capacity) {
        add(ViolationKind::Capacity, r.vehicle, -1,
            who + " initial load " + format_decimal(re.demand) + " exceeds Qe " +
                format_decimal(vp.load_capacity));
      }
      if (re.realtime_energy > vp.battery_capacity) {
        add(ViolationKind::Battery, r.vehicle, -1,
            who + " energy " + format_decimal(re.realtime_energy) + " exceeds Qb " +
                format_decimal(vp.battery_capacity));
      }
    } catch (const HorizonExceeded&) {
      add(ViolationKind::Horizon, r.vehicle, -1, who + " cannot return before the horizon");
    }
  }
  for (int c = 1; c <= n; ++c) {
    if (seen[static_cast<std::size_t>(c)] == 0) {
      add(ViolationKind::MissingCustomer, -1, c, "customer " + std::to_string(c) + " not visited");
    }
  }
  if (used > instance.fleet_size()) {
    add(ViolationKind::FleetSize, -1, -1,
        std::to_string(used) + " routes exceed fleet size " + std::to_string(instance.fleet_size()));
  }
  return report;
}

EvalReport compare_load_models(const Solution& realtime, const Solution& no_load,
                               const Solution& initial_load, const Instance& instance,
                               double service_time) {
  auto objective = [&](const Solution& s, LoadModel model) {
    EvalOptions opts;
    opts.load_model = model;
    opts.service_time = service_time;
    return make_solution(s.visit_lists(), instance, opts).objective;
  };
  EvalReport rep;
  rep.W = objective(realtime, LoadModel::RealTime);
  rep.W_no_load = objective(no_load, LoadModel::NoLoad);
  rep.W_ini_load = objective(initial_load, LoadModel::RealTime);
  if (rep.W > 0.0) {
    rep.G_no_load = (rep.W_no_load / rep.W - 1.0) * 100.0;
    rep.G_ini_load = (rep.W_ini_load / rep.W - 1.0) * 100.0;
  }
  return rep;
}

std::string eval_report_csv_header() { return "ins,n,W,W_no_load,G_no_load,G_ini_load"; }

std::string eval_report_csv_row(std::string_view name, int n, const EvalReport& report) {
  std::ostringstream out;
  out << name << ',' << n << ',' << format_decimal(report.W) << ','
      << format_decimal(report.W_no_load) << ',' << format_decimal(report.G_no_load) << ','
      << format_decimal(report.G_ini_load);
  return out.str();
}

Json solution_to_json(const Solution& solution) {
  Json routes = Json::array();
  for (const Route& r : solution.routes) {
    Json deps = Json::array();
    Json loads = Json::array();
    for (double t : r.departures) deps.push_back(t);
    for (double l : r.loads) loads.push_back(l);
    routes.push_back({{"vehicle", r.vehicle},
                      {"visits", r.visits},
                      {"departures", std::move(deps)},
                      {"loads", std::move(loads)},
                      {"energy", r.energy}});
  }
  Json doc = Json::object();
  doc["routes"] = std::move(routes);
  doc["objective"] = solution.objective;
  doc["load_model"] = std::string(load_model_name(solution.load_model));
  doc["energy_mode"] = solution.energy_mode == EnergyMode::Exact ? "exact" : "minlp-approx";
  return doc;
}

std::vector<std::vector<int>> routes_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("routes") || !doc["routes"].is_array()) {
    throw ParseError("missing field 'solution.routes'");
  }
  std::vector<std::vector<int>> out;
  for (const auto& r : doc["routes"]) {
    if (!r.is_object() || !r.contains("visits") || !r["visits"].is_array()) {
      throw ParseError("missing field 'routes[].visits'");
    }
    std::vector<int> visits;
    for (const auto& v : r["visits"]) {
      if (!v.is_number_integer()) throw ParseError("field 'routes[].visits' must hold integers");
      visits.push_back(v.get<int>());
    }
    out.push_back(std::move(visits));
  }
  return out;
}

}  // namespace aldvrp
