#include "aldvrp/pool.hpp"

#include <ostream>

namespace aldvrp {

std::size_t VisitsHash::operator()(const std::vector<int>& v) const noexcept {
  // FNV-1a over the visit ids.
  std::size_t h = 1469598103934665603ull;
  for (int x : v) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
    h *= 1099511628211ull;
  }
  return h;
}

RoutePool::RoutePool(const RoutePool& other) {
  std::lock_guard lock(other.mutex_);
  columns_ = other.columns_;
  index_ = other.index_;
  threshold_ = other.threshold_;
}

RoutePool& RoutePool::operator=(const RoutePool& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  columns_ = other.columns_;
  index_ = other.index_;
  threshold_ = other.threshold_;
  return *this;
}

bool RoutePool::add(std::vector<int> visits, double cost) {
  if (visits.empty()) return false;
  std::lock_guard lock(mutex_);
  auto it = index_.find(visits);
  if (it != index_.end()) {
    Column& existing = columns_[it->second];
    if (cost < existing.cost) {
      existing.cost = cost;
      return true;
    }
    return false;
  }
  index_.emplace(visits, columns_.size());
  columns_.push_back({std::move(visits), cost});
  return true;
}

std::size_t RoutePool::merge(const RoutePool& other) {
  std::size_t inserted = 0;
  for (Column& c : other.snapshot()) inserted += add(std::move(c.visits), c.cost) ? 1 : 0;
  return inserted;
}

std::size_t RoutePool::size() const {
  std::lock_guard lock(mutex_);
  return columns_.size();
}

std::vector<Column> RoutePool::snapshot() const {
  std::lock_guard lock(mutex_);
  return columns_;
}

void RoutePool::dump_jsonl(std::ostream& out) const {
  for (const Column& c : snapshot()) {
    Json line = {{"visits", c.visits}, {"cost", c.cost}};
    out << dump_json(line, -1) << '\n';
  }
}

bool pool_add(RoutePool& pool, const Route& route) { return pool.add(route.visits, route.energy); }

}  // namespace aldvrp
