#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "aldvrp/json_format.hpp"

namespace aldvrp {

/// Vehicle mass, capacities and power-model coefficients.
///
/// Power drawn at speed v with acceleration a and payload L is
/// r*v + s*v^2 + c*v^3 + (M + L)*|a|*v. `gamma` is the linearized
/// resistance coefficient used only by the MINLP-approximation energy mode.
struct VehicleParams {
  double mass = 1500.0;              // M, kg
  double load_capacity = 500.0;      // Q_e, kg
  double battery_capacity = 1.0e6;   // Q_b, energy units
  double coeff_r = 40.0;
  double coeff_s = 10.0;
  double coeff_c = 10.0;
  double gamma = 60.0;

  void validate() const;
  bool operator==(const VehicleParams&) const = default;
};

/// Arc speed as a function of absolute time (km/min over minutes).
///
/// Speed is linear between consecutive breakpoints and constant before the
/// first and after the last breakpoint, so the profile is continuous by
/// construction. Pieces are numbered 0..breakpoints().size(): piece 0 is the
/// constant lead-in before t0, piece m (1 <= m < size) is the interval
/// [t_{m-1}, t_m], and the last piece is the constant tail.
class SpeedProfile {
 public:
  struct Piece {
    double t_start = 0.0;
    double t_end = 0.0;  // +inf for the tail piece
    double v_start = 0.0;
    double accel = 0.0;
  };

  SpeedProfile() = default;
  SpeedProfile(std::vector<double> breakpoints, std::vector<double> speeds);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> speeds() const { return speeds_; }

  /// Number of finite intervals [t_{m-1}, t_m].
  std::size_t interval_count() const { return breakpoints_.size() - 1; }
  /// Constant acceleration inside interval m, 1 <= m <= interval_count().
  double acceleration(std::size_t m) const;

  std::size_t piece_count() const { return breakpoints_.size() + 1; }
  /// Piece containing time t; breakpoint times belong to the later piece.
  std::size_t piece_index(double t) const;
  Piece piece(std::size_t k) const;

  double speed_at(double t) const;

  bool operator==(const SpeedProfile&) const = default;

 private:
  std::vector<double> breakpoints_{0.0};
  std::vector<double> speeds_{1.0};
};

struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;

  bool operator==(const Node&) const = default;
};

/// Immutable problem data. Node 0 is the start depot, node n+1 the end depot
/// and 1..n are customers; distances and profile assignments are dense
/// (n+2) x (n+2) matrices. The constructor validates every invariant.
class Instance {
 public:
  Instance(std::vector<Node> nodes, std::vector<double> distances,
           std::vector<SpeedProfile> profiles, std::vector<int> assignment,
           VehicleParams vehicle, int fleet_size, double horizon);

  int customer_count() const { return static_cast<int>(nodes_.size()) - 2; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int start_depot() const { return 0; }
  int end_depot() const { return node_count() - 1; }

  std::span<const Node> nodes() const { return nodes_; }
  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  double demand(int i) const { return node(i).demand; }
  double total_demand() const;

  double distance(int i, int j) const { return distances_[index(i, j)]; }
  const SpeedProfile& profile(int i, int j) const {
    return profiles_[static_cast<std::size_t>(assignment_[index(i, j)])];
  }
  int profile_class(int i, int j) const { return assignment_[index(i, j)]; }

  std::span<const double> distance_matrix() const { return distances_; }
  std::span<const SpeedProfile> profiles() const { return profiles_; }
  std::span<const int> assignment_matrix() const { return assignment_; }

  const VehicleParams& vehicle() const { return vehicle_; }
  int fleet_size() const { return fleet_size_; }
  double horizon() const { return horizon_; }

  bool operator==(const Instance&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * nodes_.size() + static_cast<std::size_t>(j);
  }
  void validate() const;

  std::vector<Node> nodes_;
  std::vector<double> distances_;
  std::vector<SpeedProfile> profiles_;
  std::vector<int> assignment_;
  VehicleParams vehicle_;
  int fleet_size_ = 1;
  double horizon_ = 0.0;
};

Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& doc);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);
std::string instance_to_string(const Instance& instance);

/// Settings of the synthetic generator. Customers are spread uniformly over a
/// square with the depot at its centre; each arc gets one of several speed
/// classes, each class a scaled copy of a six-regime plateau schedule whose
/// plateaus are joined by linear ramps.
struct GeneratorConfig {
  double region_size = 20.0;       // km, side of the square
  double demand_min = 10.0;        // kg
  double demand_max = 100.0;       // kg
  double detour_factor = 1.3;      // road distance / Euclidean distance
  double ramp_duration = 10.0;     // min, centred on each regime boundary
  double horizon = 600.0;          // min
  // Regime i covers [regime_starts[i], regime_starts[i+1]); the last runs to
  // the horizon.
  std::vector<double> regime_starts{0.0, 30.0, 60.0, 90.0, 150.0, 210.0};
  std::vector<double> regime_speeds{0.6, 1.1, 0.7, 0.9, 0.5, 1.0};
  // Class 0 is the unscaled reference schedule.
  std::vector<double> class_scales{1.0, 0.8, 1.2};
  VehicleParams vehicle{};
  int fleet_size = 0;              // 0: derived from demand and fleet_slack
  int fleet_slack = 2;
};

/// Builds the ramped plateau profile for regime speeds scaled by `scale`.
SpeedProfile plateau_profile(const GeneratorConfig& config, double scale);

/// Deterministic in (n, seed, config).
Instance generate_instance(int n, std::uint64_t seed, const GeneratorConfig& config = {});

}  // namespace aldvrp
