#include <algorithm>
#include <cmath>
#include <random>

#include "aldvrp/errors.hpp"
#include "aldvrp/model.hpp"

namespace aldvrp {

SpeedProfile plateau_profile(const GeneratorConfig& config, double scale) {
  const auto& starts = config.regime_starts;
  const auto& speeds = config.regime_speeds;
  if (starts.empty() || starts.size() != speeds.size()) {
    throw ValidationError("regime_starts and regime_speeds must be non-empty and equal in length");
  }
  const double half = config.ramp_duration / 2.0;
  std::vector<double> bps{starts.front()};
  std::vector<double> vs{speeds.front() * scale};
  for (std::size_t i = 1; i < starts.size(); ++i) {
    if (!(starts[i] - half > bps.back())) {
      throw ValidationError("ramp_duration too long for the regime spacing");
    }
    // Ramp from the previous plateau to this one, centred on the boundary.
    bps.push_back(starts[i] - half);
    vs.push_back(speeds[i - 1] * scale);
    bps.push_back(starts[i] + half);
    vs.push_back(speeds[i] * scale);
  }
  return SpeedProfile(std::move(bps), std::move(vs));
}

Instance generate_instance(int n, std::uint64_t seed, const GeneratorConfig& config) {
  if (n < 1) throw ValidationError("generate_instance needs n >= 1");
  if (!(config.demand_min > 0.0) || config.demand_max < config.demand_min) {
    throw ValidationError("demand range must satisfy 0 < demand_min <= demand_max");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, config.region_size);
  std::uniform_real_distribution<double> demand(config.demand_min, config.demand_max);

  const double centre = config.region_size / 2.0;
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(n) + 2);
  nodes.push_back({0, centre, centre, 0.0});
  for (int i = 1; i <= n; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    nodes.push_back({i, x, y, demand(rng)});
  }
  nodes.push_back({n + 1, centre, centre, 0.0});

  const std::size_t size = nodes.size();
  std::vector<double> distances(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i == j) continue;
      const double euclid = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
      distances[i * size + j] = euclid * config.detour_factor;
    }
  }
  // Coincident customers would give a zero-length arc.
  for (std::size_t i = 1; i + 1 < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i != j) {
        distances[i * size + j] = std::max(distances[i * size + j], 1e-6);
        distances[j * size + i] = std::max(distances[j * size + i], 1e-6);
      }
    }
  }

  std::vector<SpeedProfile> profiles;
  for (double scale : config.class_scales) profiles.push_back(plateau_profile(config, scale));
  std::uniform_int_distribution<int> pick(0, static_cast<int>(profiles.size()) - 1);
  std::vector<int> assignment(size * size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      // The two directions of a street share congestion.
      const int cls = pick(rng);
      assignment[i * size + j] = cls;
      assignment[j * size + i] = cls;
    }
  }

  double total = 0.0;
  for (const Node& v : nodes) total += v.demand;
  int fleet = config.fleet_size;
  if (fleet <= 0) {
    fleet = static_cast<int>(std::ceil(total / config.vehicle.load_capacity)) + config.fleet_slack;
  }
  if (total > fleet * config.vehicle.load_capacity) {
    throw ValidationError("fleet too small for the generated demand");
  }
  return Instance(std::move(nodes), std::move(distances), std::move(profiles),
                  std::move(assignment), config.vehicle, fleet, config.horizon);
}

}  // namespace aldvrp
