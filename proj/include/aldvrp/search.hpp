#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "aldvrp/evaluate.hpp"
#include "aldvrp/pool.hpp"
#include "aldvrp/route_cache.hpp"
#include "aldvrp/spp.hpp"

namespace aldvrp {

using Rng = std::mt19937_64;

/// Tunables of the LNS + local search + set partitioning scheme.
struct SearchConfig {
  EvalOptions eval{};

  // Destroy size: ceil(rho * n) customers with rho ~ U[rho_min, rho_max].
  double rho_min = 0.1;
  double rho_max = 0.3;
  // Rank-biased selection index floor(y^p * size); p -> inf is greedy.
  double removal_bias = 3.0;
  double shaw_bias = 6.0;
  double shaw_weight_distance = 0.75;
  double shaw_weight_demand = 0.25;
  std::vector<int> regret_depths{2, 3};

  // Simulated annealing: a solution `sa_worse_fraction` worse than the
  // initial one is accepted with probability `sa_accept_probability` at the
  // start; temperature is multiplied by `cooling` each iteration.
  double sa_worse_fraction = 0.05;
  double sa_accept_probability = 0.5;
  double cooling = 0.9995;
  // Roulette rewards for new best / improving current / accepted.
  std::array<double, 3> scores{33.0, 9.0, 1.0};

  std::size_t pool_threshold = 2000;  // 0 disables in-run set partitioning
  double spp_time_limit = 5.0;
  int max_route_length = 40;
  // Local search only tries placing a customer next to its k nearest
  // customers (0: all positions).
  int granular_neighbors = 20;

  int log_every = 0;  // progress line every k iterations, 0: off
};

struct Budget {
  std::optional<long> iterations;
  std::optional<double> seconds;

  static Budget iters(long n) { return {n, std::nullopt}; }
  static Budget secs(double s) { return {std::nullopt, s}; }
};

/// Mutable solution used by the operators: cached routes plus a
/// customer -> (route, position) index. Empty routes are dropped.
class WorkingSolution {
 public:
  WorkingSolution(const RouteEvaluator& eval, const std::vector<std::vector<int>>& routes);

  const RouteEvaluator& evaluator() const { return *eval_; }
  const Instance& instance() const { return eval_->instance(); }

  std::span<const CachedRoute> routes() const { return routes_; }
  const CachedRoute& route(std::size_t r) const { return routes_[r]; }
  std::size_t route_count() const { return routes_.size(); }

  double objective() const;
  bool feasible() const;

  /// Route index and position of a customer; route is -1 when unassigned.
  int route_of(int customer) const { return where_[static_cast<std::size_t>(customer)].first; }
  int position_of(int customer) const { return where_[static_cast<std::size_t>(customer)].second; }
  std::vector<int> assigned_customers() const;

  /// Replaces route r (r == route_count() appends). Empty routes are removed,
  /// which shifts the indices of later routes.
  void set_route(std::size_t r, std::vector<int> visits);
  void remove_customer(int customer);
  void insert_customer(int customer, std::size_t r, std::size_t position);

  std::vector<std::vector<int>> visit_lists() const;
  Solution to_solution() const;

 private:
  void reindex();

  const RouteEvaluator* eval_;
  std::vector<CachedRoute> routes_;
  std::vector<std::pair<int, int>> where_;
};

/// Energy saved by skipping `customer`: its route's objective minus the
/// objective of the same route without it (0 if the route would be empty).
double detour_cost(const WorkingSolution& sol, int customer);

/// Index in [0, size) drawn as floor(y^bias * size), y ~ U[0,1).
std::size_t biased_index(std::size_t size, double bias, Rng& rng);

// Removal operators take customers out of `sol` and return them in removal
// order. 1 <= count < number of assigned customers.

/// Largest energy saving from skipping the customer.
std::vector<int> remove_distance(WorkingSolution& sol, int count, Rng& rng,
                                 const SearchConfig& config);
/// Heaviest demand first, later departure breaking ties.
std::vector<int> remove_load(WorkingSolution& sol, int count, Rng& rng,
                             const SearchConfig& config);
/// Clusters of customers related by distance and demand.
std::vector<int> remove_shaw(WorkingSolution& sol, int count, Rng& rng,
                             const SearchConfig& config);

/// Shaw relatedness w_d * d_hat + w_q * |dq|_hat (lower is more related).
double shaw_relatedness(const Instance& instance, int i, int j, const SearchConfig& config);

// Insertion operators put every removed customer back, opening a new route
// when nothing else is feasible and the fleet allows. Throw InfeasibleError
// ("insertion failed") otherwise.

void insert_greedy(WorkingSolution& sol, std::span<const int> removed);
void insert_regret(WorkingSolution& sol, std::span<const int> removed, int k);
void insert_random(WorkingSolution& sol, std::span<const int> removed, Rng& rng);

/// Relocate, swap, 2-opt and tail-exchange moves with first improvement
/// until no move improves. Returns true if anything changed.
bool local_search(WorkingSolution& sol, const SearchConfig& config = {});

/// Nearest-neighbour giant tour by distance from the depot.
std::vector<int> nearest_neighbor_tour(const Instance& instance);

struct LnsResult {
  Solution best;
  Solution initial;
  RoutePool pool;
  long iterations = 0;
  int spp_runs = 0;
  int spp_improvements = 0;
  std::vector<double> best_history;  // best objective after each iteration
};

/// LNS with roulette operator selection, local search and simulated
/// annealing; every route of every repaired solution goes to the pool, and
/// set partitioning runs each time the pool grows by pool_threshold columns.
/// `shared` (optional) receives the same routes. Deterministic per seed for
/// iteration budgets.
LnsResult lns_run(const Instance& instance, const SearchConfig& config, std::uint64_t seed,
                  const Budget& budget, std::ostream* log = nullptr,
                  RoutePool* shared = nullptr);

struct SolveResult {
  Solution best;      // after the terminal set partitioning
  Solution lns_best;  // best of the LNS workers before it
  RoutePool pool;
  SppStatus spp_status = SppStatus::NoPartition;
  long iterations = 0;
};

/// `workers` seeded LNS runs sharing a pool, then a terminal set
/// partitioning over that pool.
SolveResult solve(const Instance& instance, const SearchConfig& config, std::uint64_t seed,
                  const Budget& budget, int workers = 1, std::ostream* log = nullptr);

Json search_config_to_json(const SearchConfig& config);
SearchConfig search_config_from_json(const Json& doc);

}  // namespace aldvrp
