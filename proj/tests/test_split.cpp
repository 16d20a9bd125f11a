#include <gtest/gtest.h>

#include <random>

#include "aldvrp/errors.hpp"
#include "aldvrp/split.hpp"
#include "support.hpp"

using namespace aldvrp;

namespace {

// Brute force over every set of cut positions of the tour.
struct Best {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t routes = 0;
};

Best exhaustive_split(const std::vector<int>& tour, const Instance& inst) {
  const std::size_t n = tour.size();
  Best best;
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<std::vector<int>> routes{{}};
    for (std::size_t i = 0; i < n; ++i) {
      routes.back().push_back(tour[i]);
      if (i + 1 < n && (mask >> i & 1u)) routes.emplace_back();
    }
    if (static_cast<int>(routes.size()) > inst.fleet_size()) continue;
    double cost = 0.0;
    bool ok = true;
    for (const auto& r : routes) {
      try {
        const Route e = evaluate_route(r, inst);
        if (e.demand > inst.vehicle().load_capacity ||
            e.realtime_energy > inst.vehicle().battery_capacity) {
          ok = false;
          break;
        }
        cost += e.energy;
      } catch (const HorizonExceeded&) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (cost < best.cost - 1e-9 * cost ||
        (std::abs(cost - best.cost) <= 1e-9 * cost && routes.size() < best.routes)) {
      best = {cost, routes.size()};
    }
  }
  return best;
}

}  // namespace

TEST(Split, SingleCustomer) {
  const Instance inst = generate_instance(1, 3);
  const auto res = split_tour(std::vector<int>{1}, inst);
  ASSERT_EQ(res.routes.size(), 1u);
  EXPECT_EQ(res.routes[0], std::vector<int>{1});
  EXPECT_EQ(res.cuts, std::vector<int>{1});
  EXPECT_NEAR(res.cost, evaluate_route(std::vector<int>{1}, inst).energy, 1e-9);
}

TEST(Split, CapacityForcesSingletons) {
  VehicleParams vp = testsupport::unit_vehicle();
  vp.load_capacity = 50.0;
  const Instance inst = testsupport::point_instance({{1, 0}, {2, 0}, {3, 0}}, {30, 35, 40},
                                                    SpeedProfile({0.0}, {1.0}), vp, 3);
  const auto res = split_tour(std::vector<int>{2, 1, 3}, inst);
  EXPECT_EQ(res.routes, (std::vector<std::vector<int>>{{2}, {1}, {3}}));
}

TEST(Split, EightCustomersMatchExhaustive) {
  GeneratorConfig cfg;
  cfg.vehicle.load_capacity = 200.0;
  cfg.fleet_slack = 3;
  std::mt19937_64 rng(4);
  for (int seed = 0; seed < 10; ++seed) {
    const Instance inst = generate_instance(8, static_cast<std::uint64_t>(seed), cfg);
    std::vector<int> tour{1, 2, 3, 4, 5, 6, 7, 8};
    std::shuffle(tour.begin(), tour.end(), rng);
    const auto res = split_tour(tour, inst);
    const Best want = exhaustive_split(tour, inst);
    EXPECT_NEAR(res.cost, want.cost, 1e-9 * want.cost) << "seed " << seed;
    EXPECT_EQ(res.routes.size(), want.routes);
    const Solution sol = split(tour, inst);
    EXPECT_TRUE(check_feasible(sol, inst).feasible());
    EXPECT_NEAR(sol.objective, res.cost, 1e-9 * res.cost);
  }
}

TEST(Split, FleetLimitRespected) {
  VehicleParams vp = testsupport::unit_vehicle();
  vp.load_capacity = 50.0;
  const Instance inst = testsupport::point_instance({{1, 0}, {2, 0}, {3, 0}}, {30, 20, 40},
                                                    SpeedProfile({0.0}, {1.0}), vp, 2);
  // [1,2] must share a vehicle
  const auto res = split_tour(std::vector<int>{1, 2, 3}, inst);
  EXPECT_EQ(res.routes, (std::vector<std::vector<int>>{{1, 2}, {3}}));
  // order 1,3,2 cannot fit two vehicles
  try {
    split_tour(std::vector<int>{1, 3, 2}, inst);
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("infeasible tour"), std::string::npos);
  }
}

TEST(Split, RejectsBadTours) {
  const Instance inst = generate_instance(3, 1);
  EXPECT_THROW(split_tour(std::vector<int>{1, 1, 2}, inst), ValidationError);
  EXPECT_THROW(split_tour(std::vector<int>{1, 4}, inst), ValidationError);
}
