#include <algorithm>
#include <limits>

#include "aldvrp/errors.hpp"
#include "aldvrp/search.hpp"

namespace aldvrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Option {
  double delta = kInf;
  std::size_t pos = 0;
  bool ok() const { return delta < kInf; }
};

bool can_open_route(const WorkingSolution& sol) {
  return static_cast<int>(sol.route_count()) < sol.instance().fleet_size();
}

// Cheapest feasible position of `c` in route r; r == route_count() stands
// for a fresh route.
Option best_position(const WorkingSolution& sol, int c, std::size_t r, std::vector<int>& tail) {
  const RouteEvaluator& eval = sol.evaluator();
  Option best;
  if (r == sol.route_count()) {
    if (!can_open_route(sol)) return best;
    const auto s = eval.score(std::span<const int>(&c, 1));
    if (s.ok()) best.delta = s.objective;
    return best;
  }
  const CachedRoute& route = sol.route(r);
  const double demand = route.demand + sol.instance().demand(c);
  if (demand > sol.instance().vehicle().load_capacity) return best;
  for (std::size_t p = 0; p <= route.size(); ++p) {
    tail.clear();
    tail.push_back(c);
    tail.insert(tail.end(), route.visits.begin() + static_cast<std::ptrdiff_t>(p), route.visits.end());
    const auto s = eval.score_tail(route, p, tail, demand, route.objective + best.delta);
    if (s.ok() && s.objective - route.objective < best.delta) {
      best.delta = s.objective - route.objective;
      best.pos = p;
    }
  }
  return best;
}

// Per-customer insertion options across all routes plus one fresh route,
// refreshed only where the solution changed.
class InsertionTable {
 public:
  InsertionTable(WorkingSolution& sol, std::span<const int> removed)
      : sol_(sol), customers_(removed.begin(), removed.end()) {
    std::sort(customers_.begin(), customers_.end());
    options_.resize(customers_.size());
    for (std::size_t i = 0; i < customers_.size(); ++i) {
      options_[i].resize(sol.route_count() + 1);
      for (std::size_t r = 0; r <= sol.route_count(); ++r) refresh(i, r);
    }
  }

  bool done() const { return customers_.empty(); }
  std::size_t size() const { return customers_.size(); }
  int customer(std::size_t i) const { return customers_[i]; }
  const std::vector<Option>& options(std::size_t i) const { return options_[i]; }

  void insert(std::size_t i, std::size_t r) {
    const int c = customers_[i];
    const std::size_t before = sol_.route_count();
    sol_.insert_customer(c, r, options_[i][r].pos);
    customers_.erase(customers_.begin() + static_cast<std::ptrdiff_t>(i));
    options_.erase(options_.begin() + static_cast<std::ptrdiff_t>(i));
    const bool opened = sol_.route_count() > before;
    for (std::size_t k = 0; k < customers_.size(); ++k) {
      if (opened) options_[k].emplace_back();
      refresh(k, r);
      if (opened) refresh(k, sol_.route_count());
    }
  }

 private:
  void refresh(std::size_t i, std::size_t r) {
    options_[i][r] = best_position(sol_, customers_[i], r, tail_);
  }

  WorkingSolution& sol_;
  std::vector<int> customers_;
  std::vector<std::vector<Option>> options_;
  std::vector<int> tail_;
};

[[noreturn]] void insertion_failed(int c) {
  throw InfeasibleError("insertion failed: no feasible position for customer " + std::to_string(c));
}

}  // namespace

void insert_greedy(WorkingSolution& sol, std::span<const int> removed) {
  InsertionTable table(sol, removed);
  while (!table.done()) {
    double best = kInf;
    std::size_t bi = 0;
    std::size_t br = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& opts = table.options(i);
      for (std::size_t r = 0; r < opts.size(); ++r) {
        if (opts[r].delta < best) {
          best = opts[r].delta;
          bi = i;
          br = r;
        }
      }
    }
    if (best == kInf) insertion_failed(table.customer(0));
    table.insert(bi, br);
  }
}

void insert_regret(WorkingSolution& sol, std::span<const int> removed, int k) {
  k = std::max(k, 1);
  InsertionTable table(sol, removed);
  std::vector<double> deltas;
  while (!table.done()) {
    double best_regret = -kInf;
    double best_first = kInf;
    std::size_t bi = 0;
    std::size_t br = 0;
    bool found = false;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& opts = table.options(i);
      deltas.clear();
      std::size_t first_route = 0;
      double first = kInf;
      for (std::size_t r = 0; r < opts.size(); ++r) {
        if (!opts[r].ok()) continue;
        deltas.push_back(opts[r].delta);
        if (opts[r].delta < first) {
          first = opts[r].delta;
          first_route = r;
        }
      }
      if (deltas.empty()) continue;
      const auto kth = static_cast<std::size_t>(k - 1);
      double regret = kInf;  // fewer than k options: insert before it runs out
      if (deltas.size() > kth) {
        std::nth_element(deltas.begin(), deltas.begin() + static_cast<std::ptrdiff_t>(kth), deltas.end());
        regret = deltas[kth] - first;
      }
      if (!found || regret > best_regret || (regret == best_regret && first < best_first)) {
        found = true;
        best_regret = regret;
        best_first = first;
        bi = i;
        br = first_route;
      }
    }
    if (!found) insertion_failed(table.customer(0));
    table.insert(bi, br);
  }
}

void insert_random(WorkingSolution& sol, std::span<const int> removed, Rng& rng) {
  std::vector<int> order(removed.begin(), removed.end());
  std::shuffle(order.begin(), order.end(), rng);
  const RouteEvaluator& eval = sol.evaluator();
  const double capacity = sol.instance().vehicle().load_capacity;
  std::vector<int> tail;
  std::vector<std::pair<std::size_t, std::size_t>> feasible;
  for (int c : order) {
    feasible.clear();
    for (std::size_t r = 0; r < sol.route_count(); ++r) {
      const CachedRoute& route = sol.route(r);
      const double demand = route.demand + sol.instance().demand(c);
      if (demand > capacity) continue;
      for (std::size_t p = 0; p <= route.size(); ++p) {
        tail.assign(1, c);
        tail.insert(tail.end(), route.visits.begin() + static_cast<std::ptrdiff_t>(p), route.visits.end());
        if (eval.score_tail(route, p, tail, demand).ok()) feasible.emplace_back(r, p);
      }
    }
    if (feasible.empty()) {
      if (!can_open_route(sol) || !eval.score(std::span<const int>(&c, 1)).ok()) insertion_failed(c);
      feasible.emplace_back(sol.route_count(), 0);
    }
    const auto [r, p] = feasible[std::uniform_int_distribution<std::size_t>(0, feasible.size() - 1)(rng)];
    sol.insert_customer(c, r, p);
  }
}

}  // namespace aldvrp
