#pragma once

#include <span>
#include <vector>

#include "aldvrp/evaluate.hpp"

namespace aldvrp {

struct SplitOptions {
  // Longest route (in customers) considered as a DAG arc.
  int max_route_length = 40;
};

struct SplitResult {
  std::vector<std::vector<int>> routes;
  std::vector<int> cuts;  // route end positions in the tour, last one is n
  double cost = 0.0;
};

/// Optimal decomposition of a giant tour into contiguous feasible routes
/// (capacity, battery, horizon) with at most fleet_size routes, minimizing
/// total route energy under `options`. Ties go to fewer routes, then to the
/// lexicographically smallest sequence of cut positions.
/// Throws InfeasibleError if no partition fits the fleet.
SplitResult split_tour(std::span<const int> tour, const Instance& instance,
                       const EvalOptions& options = {}, const SplitOptions& split = {});

/// split_tour evaluated into a Solution.
Solution split(std::span<const int> tour, const Instance& instance,
               const EvalOptions& options = {}, const SplitOptions& split = {});

}  // namespace aldvrp
