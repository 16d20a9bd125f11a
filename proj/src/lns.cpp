#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "aldvrp/errors.hpp"
#include "aldvrp/search.hpp"
#include "aldvrp/split.hpp"

namespace aldvrp {

std::vector<int> nearest_neighbor_tour(const Instance& instance) {
  const int n = instance.customer_count();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> tour;
  tour.reserve(static_cast<std::size_t>(n));
  int at = 0;
  for (int step = 0; step < n; ++step) {
    int next = -1;
    for (int v = 1; v <= n; ++v) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      if (next < 0 || instance.distance(at, v) < instance.distance(at, next)) next = v;
    }
    seen[static_cast<std::size_t>(next)] = true;
    tour.push_back(next);
    at = next;
  }
  return tour;
}

namespace {

using Clock = std::chrono::steady_clock;

// Roulette wheel over operators; weight = 1 + mean reward per use.
class Roulette {
 public:
  explicit Roulette(std::size_t size) : reward_(size, 0.0), uses_(size, 0) {}

  std::size_t pick(Rng& rng) const {
    std::vector<double> w(reward_.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = 1.0 + (uses_[i] > 0 ? reward_[i] / static_cast<double>(uses_[i]) : 0.0);
    }
    std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
    return dist(rng);
  }

  void record(std::size_t i, double reward) {
    reward_[i] += reward;
    ++uses_[i];
  }

 private:
  std::vector<double> reward_;
  std::vector<long> uses_;
};

enum class Removal { Distance, Load, Shaw };

struct Insertion {
  enum Kind { Random, Greedy, Regret } kind;
  int k = 0;
};

void feed(const WorkingSolution& sol, RoutePool& pool, RoutePool* shared) {
  for (const CachedRoute& r : sol.routes()) {
    if (!r.feasible) continue;
    pool.add(r.visits, r.objective);
    if (shared) shared->add(r.visits, r.objective);
  }
}

}  // namespace

LnsResult lns_run(const Instance& instance, const SearchConfig& config, std::uint64_t seed,
                  const Budget& budget, std::ostream* log, RoutePool* shared) {
  if (config.rho_min <= 0.0 || config.rho_min > config.rho_max || config.rho_max >= 1.0) {
    throw ValidationError("invalid config: need 0 < rho_min <= rho_max < 1");
  }
  const auto start = Clock::now();
  Rng rng(seed);
  const RouteEvaluator eval(instance, config.eval);

  const auto tour = nearest_neighbor_tour(instance);
  const Solution initial = split(tour, instance, config.eval, {config.max_route_length});

  LnsResult result{initial, initial, RoutePool(config.pool_threshold), 0, 0, 0, {}};
  WorkingSolution current(eval, initial.visit_lists());
  WorkingSolution best = current;
  feed(current, result.pool, shared);

  auto out_of_budget = [&](long iter) {
    if (budget.iterations && iter >= *budget.iterations) return true;
    if (budget.seconds &&
        std::chrono::duration<double>(Clock::now() - start).count() >= *budget.seconds) {
      return true;
    }
    return !budget.iterations && !budget.seconds;
  };

  std::vector<Insertion> inserters{{Insertion::Random}, {Insertion::Greedy}};
  for (int k : config.regret_depths) inserters.push_back({Insertion::Regret, k});
  Roulette removal_wheel(3);
  Roulette insertion_wheel(inserters.size());

  const double p_accept = std::clamp(config.sa_accept_probability, 1e-12, 1.0 - 1e-12);
  double temperature = config.sa_worse_fraction * current.objective() / std::log(1.0 / p_accept);
  const int n = instance.customer_count();
  std::size_t next_spp = config.pool_threshold;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  if (log) *log << "iter,current_obj,best_obj,temp\n";

  long iter = 0;
  while (!out_of_budget(iter)) {
    ++iter;
    double reward = 0.0;
    const auto ri = removal_wheel.pick(rng);
    const auto ii = insertion_wheel.pick(rng);

    const int assigned = static_cast<int>(current.assigned_customers().size());
    if (assigned >= 2) {
      const double rho = std::uniform_real_distribution<double>(config.rho_min, config.rho_max)(rng);
      const int count = std::clamp(static_cast<int>(std::ceil(rho * n)), 1, assigned - 1);
      WorkingSolution cand = current;
      std::vector<int> removed;
      switch (static_cast<Removal>(ri)) {
        case Removal::Distance: removed = remove_distance(cand, count, rng, config); break;
        case Removal::Load: removed = remove_load(cand, count, rng, config); break;
        case Removal::Shaw: removed = remove_shaw(cand, count, rng, config); break;
      }
      bool repaired = true;
      try {
        switch (inserters[ii].kind) {
          case Insertion::Random: insert_random(cand, removed, rng); break;
          case Insertion::Greedy: insert_greedy(cand, removed); break;
          case Insertion::Regret: insert_regret(cand, removed, inserters[ii].k); break;
        }
      } catch (const InfeasibleError&) {
        repaired = false;
      }
      if (repaired && cand.feasible()) {
        feed(cand, result.pool, shared);
        local_search(cand, config);
        feed(cand, result.pool, shared);

        const double eps = 1e-10 * std::max(1.0, best.objective());
        const double delta = cand.objective() - current.objective();
        if (cand.objective() < best.objective() - eps) {
          reward = config.scores[0];
          best = cand;
          current = std::move(cand);
        } else if (delta < -eps) {
          reward = config.scores[1];
          current = std::move(cand);
        } else if (temperature > 0.0 && unit(rng) < std::exp(-delta / temperature)) {
          reward = config.scores[2];
          current = std::move(cand);
        }
      }
    }
    removal_wheel.record(ri, reward);
    insertion_wheel.record(ii, reward);
    temperature *= config.cooling;

    if (config.pool_threshold > 0 && result.pool.size() >= next_spp) {
      while (next_spp <= result.pool.size()) next_spp += config.pool_threshold;
      ++result.spp_runs;
      const auto spp = solve_spp(result.pool, instance, best.to_solution(), config.eval,
                                 {config.spp_time_limit});
      if (spp.improved) {
        ++result.spp_improvements;
        best = WorkingSolution(eval, spp.solution.visit_lists());
        current = best;
      }
    }

    result.best_history.push_back(best.objective());
    if (log && config.log_every > 0 && iter % config.log_every == 0) {
      *log << iter << ',' << format_decimal(current.objective()) << ','
           << format_decimal(best.objective()) << ',' << format_decimal(temperature) << '\n';
    }
  }
  result.iterations = iter;
  result.best = best.to_solution();
  return result;
}

SolveResult solve(const Instance& instance, const SearchConfig& config, std::uint64_t seed,
                  const Budget& budget, int workers, std::ostream* log) {
  workers = std::max(workers, 1);
  RoutePool shared(config.pool_threshold);
  std::vector<std::optional<LnsResult>> runs(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));

  auto work = [&](int w) {
    try {
      const std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(w);
      runs[static_cast<std::size_t>(w)] =
          lns_run(instance, config, s, budget, w == 0 ? log : nullptr, &shared);
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SolveResult result;
  const LnsResult* lead = nullptr;
  for (const auto& run : runs) {
    result.iterations += run->iterations;
    if (!lead || run->best.objective < lead->best.objective) lead = &*run;
  }
  result.lns_best = lead->best;

  // Thread interleaving decides the shared pool's order; sort it so the
  // terminal partitioning does not depend on it.
  auto columns = shared.snapshot();
  std::sort(columns.begin(), columns.end(), [](const Column& a, const Column& b) {
    return a.visits < b.visits;
  });
  result.pool = RoutePool(config.pool_threshold);
  for (auto& c : columns) result.pool.add(std::move(c.visits), c.cost);

  const auto spp = solve_spp(result.pool, instance, result.lns_best, config.eval,
                             {config.spp_time_limit});
  result.best = spp.solution;
  result.spp_status = spp.status;
  return result;
}

}  // namespace aldvrp
