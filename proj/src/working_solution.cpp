#include <algorithm>

#include "aldvrp/search.hpp"

namespace aldvrp {

WorkingSolution::WorkingSolution(const RouteEvaluator& eval,
                                 const std::vector<std::vector<int>>& routes)
    : eval_(&eval) {
  for (const auto& visits : routes) {
    if (!visits.empty()) routes_.push_back(eval.build(visits));
  }
  reindex();
}

double WorkingSolution::objective() const {
  double total = 0.0;
  for (const CachedRoute& r : routes_) total += r.objective;
  return total;
}

bool WorkingSolution::feasible() const {
  if (static_cast<int>(routes_.size()) > instance().fleet_size()) return false;
  return std::all_of(routes_.begin(), routes_.end(), [](const CachedRoute& r) { return r.feasible; });
}

std::vector<int> WorkingSolution::assigned_customers() const {
  std::vector<int> out;
  for (const CachedRoute& r : routes_) out.insert(out.end(), r.visits.begin(), r.visits.end());
  return out;
}

void WorkingSolution::reindex() {
  where_.assign(static_cast<std::size_t>(instance().customer_count()) + 1, {-1, -1});
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    const auto& visits = routes_[r].visits;
    for (std::size_t p = 0; p < visits.size(); ++p) {
      where_[static_cast<std::size_t>(visits[p])] = {static_cast<int>(r), static_cast<int>(p)};
    }
  }
}

void WorkingSolution::set_route(std::size_t r, std::vector<int> visits) {
  if (r == routes_.size()) {
    if (visits.empty()) return;
    routes_.push_back(eval_->build(std::move(visits)));
    const auto& v = routes_.back().visits;
    for (std::size_t p = 0; p < v.size(); ++p) {
      where_[static_cast<std::size_t>(v[p])] = {static_cast<int>(r), static_cast<int>(p)};
    }
    return;
  }
  // Customers already placed elsewhere keep their new slot.
  for (int c : routes_[r].visits) {
    auto& w = where_[static_cast<std::size_t>(c)];
    if (w.first == static_cast<int>(r)) w = {-1, -1};
  }
  if (visits.empty()) {
    routes_.erase(routes_.begin() + static_cast<std::ptrdiff_t>(r));
    reindex();
    return;
  }
  routes_[r] = eval_->build(std::move(visits));
  const auto& v = routes_[r].visits;
  for (std::size_t p = 0; p < v.size(); ++p) {
    where_[static_cast<std::size_t>(v[p])] = {static_cast<int>(r), static_cast<int>(p)};
  }
}

void WorkingSolution::remove_customer(int customer) {
  const int r = route_of(customer);
  if (r < 0) return;
  std::vector<int> visits = routes_[static_cast<std::size_t>(r)].visits;
  visits.erase(visits.begin() + position_of(customer));
  set_route(static_cast<std::size_t>(r), std::move(visits));
}

void WorkingSolution::insert_customer(int customer, std::size_t r, std::size_t position) {
  std::vector<int> visits = r < routes_.size() ? routes_[r].visits : std::vector<int>{};
  visits.insert(visits.begin() + static_cast<std::ptrdiff_t>(position), customer);
  set_route(r, std::move(visits));
}

std::vector<std::vector<int>> WorkingSolution::visit_lists() const {
  std::vector<std::vector<int>> out;
  out.reserve(routes_.size());
  for (const CachedRoute& r : routes_) out.push_back(r.visits);
  return out;
}

Solution WorkingSolution::to_solution() const {
  return make_solution(visit_lists(), instance(), eval_->options());
}

}  // namespace aldvrp
