#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aldvrp/energy.hpp"
#include "aldvrp/json_format.hpp"
#include "aldvrp/model.hpp"

namespace aldvrp {

/// Payload used in the energy model on each arc: the load actually on board,
/// none at all, or the full initial load for the whole trip.
enum class LoadModel { RealTime, NoLoad, InitialLoad };

std::string_view load_model_name(LoadModel model);
std::optional<LoadModel> parse_load_model(std::string_view name);

struct EvalOptions {
  LoadModel load_model = LoadModel::RealTime;
  EnergyMode energy_mode = EnergyMode::Exact;
  double service_time = 0.0;  // min spent at each customer
};

/// Payload charged on an arc given what is physically on board.
inline double model_load(LoadModel model, double on_board, double initial) {
  switch (model) {
    case LoadModel::RealTime: return on_board;
    case LoadModel::NoLoad: return 0.0;
    case LoadModel::InitialLoad: return initial;
  }
  return on_board;
}

/// One vehicle's trip 0 -> visits... -> n+1 with its derived schedule.
struct Route {
  int vehicle = 0;
  std::vector<int> visits;
  std::vector<double> departures;         // leaving the depot, then each visit
  std::vector<double> loads;              // on board after each departure
  std::vector<double> cumulative_energy;  // after each visit, then at the end depot
  double end_time = 0.0;
  double demand = 0.0;
  double energy = 0.0;           // under the requested load model / energy mode
  double realtime_energy = 0.0;  // exact model with real-time load
};

struct Solution {
  std::vector<Route> routes;
  double objective = 0.0;
  LoadModel load_model = LoadModel::RealTime;
  EnergyMode energy_mode = EnergyMode::Exact;

  std::vector<std::vector<int>> visit_lists() const;
};

/// Departs the depot at time 0 carrying the route's whole demand.
/// Throws HorizonExceeded if the trip cannot finish before the horizon.
Route evaluate_route(std::span<const int> visits, const Instance& instance,
                     const EvalOptions& options = {});

/// Evaluates each non-empty visit list as one vehicle (ids assigned in order).
Solution make_solution(const std::vector<std::vector<int>>& routes, const Instance& instance,
                       const EvalOptions& options = {});

enum class ViolationKind {
  UnknownCustomer,
  DuplicateVisit,
  MissingCustomer,
  Capacity,
  Battery,
  FleetSize,
  Horizon,
};

std::string_view violation_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int vehicle = -1;   // -1 when not tied to one vehicle
  int customer = -1;  // -1 when not tied to one customer
  std::string message;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
  std::string summary() const;
};

/// Re-evaluates every route from its visit order (exact energy, real-time
/// load) and lists each violated constraint.
FeasibilityReport check_feasible(const Solution& solution, const Instance& instance,
                                 double service_time = 0.0);

struct EvalReport {
  double W = 0.0;
  double W_no_load = 0.0;
  double W_ini_load = 0.0;  // initial-load routes re-evaluated with real-time load
  double G_no_load = 0.0;   // percent
  double G_ini_load = 0.0;  // percent
};

/// Builds the load-model comparison from the three solver runs. Each input is
/// re-evaluated from its visit order; the no-load run under the no-load
/// model, the initial-load run under the real-time model.
EvalReport compare_load_models(const Solution& realtime, const Solution& no_load,
                               const Solution& initial_load, const Instance& instance,
                               double service_time = 0.0);

std::string eval_report_csv_header();
std::string eval_report_csv_row(std::string_view name, int n, const EvalReport& report);

Json solution_to_json(const Solution& solution);
/// Reads only the visit lists; schedules are always recomputed.
std::vector<std::vector<int>> routes_from_json(const Json& doc);

}  // namespace aldvrp
