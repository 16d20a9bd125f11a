#pragma once

#include <cstddef>
#include <iosfwd>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "aldvrp/evaluate.hpp"

namespace aldvrp {

/// A feasible route offered to set partitioning: visit order plus cost.
struct Column {
  std::vector<int> visits;
  double cost = 0.0;

  bool operator==(const Column&) const = default;
};

struct VisitsHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept;
};

/// Deduplicated store of feasible routes keyed by exact visit order. Routes
/// with the same customers in a different order are distinct columns, since
/// departure times (and so energy) depend on the order. add() may be called
/// from several threads.
class RoutePool {
 public:
  explicit RoutePool(std::size_t threshold = 2000) : threshold_(threshold) {}
  RoutePool(const RoutePool& other);
  RoutePool& operator=(const RoutePool& other);

  /// True if the column is new or strictly cheaper than the stored copy.
  bool add(std::vector<int> visits, double cost);
  /// Merges every column of `other`; returns how many were inserted.
  std::size_t merge(const RoutePool& other);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::size_t threshold() const { return threshold_; }

  /// Copy of the columns in insertion order.
  std::vector<Column> snapshot() const;

  /// One JSON object per line: {"visits":[...],"cost":...}.
  void dump_jsonl(std::ostream& out) const;

 private:
  mutable std::mutex mutex_;
  std::vector<Column> columns_;
  std::unordered_map<std::vector<int>, std::size_t, VisitsHash> index_;
  std::size_t threshold_;
};

/// Adds an evaluated route, using its energy under the route's load model.
bool pool_add(RoutePool& pool, const Route& route);

}  // namespace aldvrp
