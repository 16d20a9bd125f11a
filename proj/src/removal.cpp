#include <algorithm>
#include <cmath>
#include <limits>

#include "aldvrp/search.hpp"

namespace aldvrp {

double detour_cost(const WorkingSolution& sol, int customer) {
  const int r = sol.route_of(customer);
  if (r < 0) return 0.0;
  const CachedRoute& route = sol.route(static_cast<std::size_t>(r));
  if (route.size() == 1) return route.objective;
  const auto p = static_cast<std::size_t>(sol.position_of(customer));
  const std::span<const int> tail(route.visits.data() + p + 1, route.size() - p - 1);
  const auto score = sol.evaluator().score_tail(route, p, tail,
                                                route.demand - sol.instance().demand(customer));
  if (!score.ok()) return -std::numeric_limits<double>::infinity();
  return route.objective - score.objective;
}

std::size_t biased_index(std::size_t size, double bias, Rng& rng) {
  if (size <= 1) return 0;
  const double y = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (std::isinf(bias)) return 0;
  const auto idx = static_cast<std::size_t>(std::floor(std::pow(y, bias) * static_cast<double>(size)));
  return std::min(idx, size - 1);
}

namespace {

int clamp_count(const WorkingSolution& sol, int count) {
  const int assigned = static_cast<int>(sol.assigned_customers().size());
  return std::clamp(count, 0, std::max(0, assigned - 1));
}

}  // namespace

std::vector<int> remove_distance(WorkingSolution& sol, int count, Rng& rng,
                                 const SearchConfig& config) {
  count = clamp_count(sol, count);
  std::vector<int> removed;
  std::vector<double> detour(static_cast<std::size_t>(sol.instance().customer_count()) + 1, 0.0);
  for (int c : sol.assigned_customers()) detour[static_cast<std::size_t>(c)] = detour_cost(sol, c);
  while (static_cast<int>(removed.size()) < count) {
    std::vector<int> ranked = sol.assigned_customers();
    std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
      const double da = detour[static_cast<std::size_t>(a)];
      const double db = detour[static_cast<std::size_t>(b)];
      return da != db ? da > db : a < b;
    });
    const int pick = ranked[biased_index(ranked.size(), config.removal_bias, rng)];
    const int r = sol.route_of(pick);
    const std::size_t before = sol.route_count();
    sol.remove_customer(pick);
    removed.push_back(pick);
    // Only the touched route's detours change.
    if (sol.route_count() == before) {
      for (int c : sol.route(static_cast<std::size_t>(r)).visits) {
        detour[static_cast<std::size_t>(c)] = detour_cost(sol, c);
      }
    }
  }
  return removed;
}

std::vector<int> remove_load(WorkingSolution& sol, int count, Rng& rng,
                             const SearchConfig& config) {
  count = clamp_count(sol, count);
  const Instance& inst = sol.instance();
  std::vector<double> departure(static_cast<std::size_t>(inst.customer_count()) + 1, 0.0);
  for (const CachedRoute& r : sol.routes()) {
    for (std::size_t p = 0; p < r.size(); ++p) {
      departure[static_cast<std::size_t>(r.visits[p])] = r.departures[p + 1];
    }
  }
  std::vector<int> ranked = sol.assigned_customers();
  std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    if (inst.demand(a) != inst.demand(b)) return inst.demand(a) > inst.demand(b);
    const double ta = departure[static_cast<std::size_t>(a)];
    const double tb = departure[static_cast<std::size_t>(b)];
    if (ta != tb) return ta > tb;
    return a < b;
  });
  std::vector<int> removed;
  while (static_cast<int>(removed.size()) < count) {
    const std::size_t k = biased_index(ranked.size(), config.removal_bias, rng);
    const int pick = ranked[k];
    ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(k));
    sol.remove_customer(pick);
    removed.push_back(pick);
  }
  return removed;
}

namespace {

// Normalizers for the relatedness measure, taken over all customer pairs.
struct ShawScale {
  double max_dist = 0.0;
  double q_range = 0.0;

  explicit ShawScale(const Instance& inst) {
    const int n = inst.customer_count();
    double q_min = std::numeric_limits<double>::infinity();
    double q_max = 0.0;
    for (int a = 1; a <= n; ++a) {
      q_min = std::min(q_min, inst.demand(a));
      q_max = std::max(q_max, inst.demand(a));
      for (int b = a + 1; b <= n; ++b) {
        max_dist = std::max(max_dist, 0.5 * (inst.distance(a, b) + inst.distance(b, a)));
      }
    }
    q_range = q_max - q_min;
  }

  double operator()(const Instance& inst, int i, int j, const SearchConfig& config) const {
    const double d = 0.5 * (inst.distance(i, j) + inst.distance(j, i));
    const double dq = std::abs(inst.demand(i) - inst.demand(j));
    const double d_hat = max_dist > 0.0 ? d / max_dist : 0.0;
    const double q_hat = q_range > 0.0 ? dq / q_range : 0.0;
    return config.shaw_weight_distance * d_hat + config.shaw_weight_demand * q_hat;
  }
};

}  // namespace

double shaw_relatedness(const Instance& instance, int i, int j, const SearchConfig& config) {
  return ShawScale(instance)(instance, i, j, config);
}

std::vector<int> remove_shaw(WorkingSolution& sol, int count, Rng& rng,
                             const SearchConfig& config) {
  count = clamp_count(sol, count);
  std::vector<int> removed;
  if (count == 0) return removed;
  const Instance& inst = sol.instance();
  const ShawScale scale(inst);
  auto related = [&](int i, int j) { return scale(inst, i, j, config); };

  std::vector<int> pool = sol.assigned_customers();
  std::sort(pool.begin(), pool.end());
  const std::size_t first = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
  removed.push_back(pool[first]);
  sol.remove_customer(pool[first]);
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(first));

  while (static_cast<int>(removed.size()) < count) {
    const int anchor =
        removed[std::uniform_int_distribution<std::size_t>(0, removed.size() - 1)(rng)];
    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(pool.size());
    for (int c : pool) ranked.emplace_back(related(anchor, c), c);
    std::sort(ranked.begin(), ranked.end());
    const int pick = ranked[biased_index(ranked.size(), config.shaw_bias, rng)].second;
    pool.erase(std::find(pool.begin(), pool.end(), pick));
    sol.remove_customer(pick);
    removed.push_back(pick);
  }
  return removed;
}

}  // namespace aldvrp
