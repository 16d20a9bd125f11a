#pragma once

#include "aldvrp/evaluate.hpp"

namespace aldvrp {

struct OracleOptions {
  int max_customers = 10;
  EvalOptions eval{};
};

/// Global optimum by exhaustive enumeration: the cheapest visit order of
/// every customer subset, then the best partition into at most fleet_size
/// subsets. Among equal costs the first subset partition / visit order in
/// lexicographic enumeration wins.
/// Throws ValidationError when the instance has more than max_customers
/// customers and InfeasibleError when no partition is feasible.
Solution exact_solve(const Instance& instance, const OracleOptions& options = {});

/// Composite Simpson integral of power over the traversal window of one arc,
/// one rule per smooth piece of the profile. `steps` (>= 1000) subintervals
/// are shared among the pieces in proportion to their duration.
/// Throws HorizonExceeded like arrival_time.
double quad_energy(const SpeedProfile& profile, double distance, double depart, double load,
                   const VehicleParams& params, int steps = 100000,
                   double horizon = kNoHorizon);

}  // namespace aldvrp
