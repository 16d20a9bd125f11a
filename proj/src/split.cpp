#include "aldvrp/split.hpp"

#include <algorithm>
#include <limits>

#include "aldvrp/errors.hpp"
#include "aldvrp/route_cache.hpp"

namespace aldvrp {

SplitResult split_tour(std::span<const int> tour, const Instance& instance,
                       const EvalOptions& options, const SplitOptions& split) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(tour.size());
  {
    std::vector<char> seen(static_cast<std::size_t>(instance.customer_count()) + 1, 0);
    for (int c : tour) {
      if (c < 1 || c > instance.customer_count() || seen[static_cast<std::size_t>(c)]++) {
        throw ValidationError("giant tour is not a permutation of distinct customers");
      }
    }
  }
  if (n == 0) return {};
  const RouteEvaluator eval(instance, options);
  const double capacity = instance.vehicle().load_capacity;
  const int max_len = std::max(1, split.max_route_length);

  // cost[u][len-1]: route over tour[u .. u+len-1], inf when infeasible.
  std::vector<std::vector<double>> cost(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    double demand = 0.0;
    for (int len = 1; len <= max_len && u + len <= n; ++len) {
      demand += instance.demand(tour[static_cast<std::size_t>(u + len - 1)]);
      if (demand > capacity) break;  // longer subsequences only get heavier
      const auto score = eval.score(tour.subspan(static_cast<std::size_t>(u),
                                                 static_cast<std::size_t>(len)));
      cost[static_cast<std::size_t>(u)].push_back(score.ok() ? score.objective : inf);
    }
  }
  auto arc = [&](int u, int v) {
    const auto& row = cost[static_cast<std::size_t>(u)];
    const int len = v - u;
    return len <= static_cast<int>(row.size()) ? row[static_cast<std::size_t>(len - 1)] : inf;
  };

  // best[k][u]: cheapest cover of tour[u..n-1] with exactly k routes.
  const int kmax = std::min(instance.fleet_size(), n);
  std::vector<std::vector<double>> best(static_cast<std::size_t>(kmax) + 1,
                                        std::vector<double>(static_cast<std::size_t>(n) + 1, inf));
  best[0][static_cast<std::size_t>(n)] = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    for (int u = n - 1; u >= 0; --u) {
      double b = inf;
      for (int v = u + 1; v <= std::min(n, u + max_len); ++v) {
        const double rest = best[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)];
        if (rest == inf) continue;
        b = std::min(b, arc(u, v) + rest);
      }
      best[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)] = b;
    }
  }

  int routes = -1;
  double total = inf;
  for (int k = 1; k <= kmax; ++k) {
    const double c = best[static_cast<std::size_t>(k)][0];
    if (c < total) {
      total = c;
      routes = k;
    }
  }
  if (routes < 0) throw InfeasibleError("infeasible tour: no feasible split within the fleet");

  SplitResult out;
  out.cost = total;
  int u = 0;
  for (int k = routes; k >= 1; --k) {
    const double target = best[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)];
    for (int v = u + 1; v <= std::min(n, u + max_len); ++v) {
      const double rest = best[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)];
      if (rest != inf && arc(u, v) + rest == target) {
        out.routes.emplace_back(tour.begin() + u, tour.begin() + v);
        out.cuts.push_back(v);
        u = v;
        break;
      }
    }
  }
  return out;
}

Solution split(std::span<const int> tour, const Instance& instance, const EvalOptions& options,
               const SplitOptions& split) {
  return make_solution(split_tour(tour, instance, options, split).routes, instance, options);
}

}  // namespace aldvrp
