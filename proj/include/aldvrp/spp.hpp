#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "aldvrp/evaluate.hpp"
#include "aldvrp/pool.hpp"

namespace aldvrp {

enum class SppStatus {
  Optimal,      // search finished; result is the best partition or the incumbent
  Timeout,      // time cap hit; result is the best found so far
  NoPartition,  // search finished without any partition at or below the incumbent
};

std::string_view spp_status_name(SppStatus status);

struct SppOptions {
  double time_limit = 5.0;  // seconds per invocation
};

struct PartitionResult {
  std::vector<std::size_t> chosen;  // column indices, empty if none found
  double cost = 0.0;
  SppStatus status = SppStatus::NoPartition;
  std::size_t nodes = 0;
};

/// Exact branch and bound over columns covering customers 1..n exactly once
/// with at most `max_routes` columns. Columns with the same customer set are
/// merged to the cheapest. Branches on the uncovered customer with the fewest
/// columns; bound = chosen cost + sum of per-customer shares of the uncovered
/// customers (subgradient-tuned Lagrangian multipliers, plus the negative
/// reduced cost mass). Short restricted passes over low reduced-cost columns
/// run before the full search. Only partitions cheaper than `upper_bound` are
/// reported.
PartitionResult solve_partition(std::span<const Column> columns, int n, int max_routes,
                                double upper_bound, const SppOptions& options = {});

struct SppResult {
  Solution solution;
  SppStatus status = SppStatus::NoPartition;
  bool improved = false;
  std::size_t nodes = 0;
};

/// Best combination of pooled routes; never worse than `incumbent`, which is
/// returned unchanged when the pool holds nothing cheaper.
SppResult solve_spp(const RoutePool& pool, const Instance& instance, const Solution& incumbent,
                    const EvalOptions& options = {}, const SppOptions& spp = {});

}  // namespace aldvrp
