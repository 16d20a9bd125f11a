#pragma once

#include <limits>
#include <span>
#include <vector>

#include "aldvrp/evaluate.hpp"

namespace aldvrp {

/// Running totals over a sequence of arcs. With route demand D and `released`
/// the demand already delivered when an arc starts, the real-time payload on
/// that arc is D - released, so energy is a linear form in these sums.
struct ArcSums {
  EnergyTerms terms;          // in the evaluation's energy mode
  double released_inertia = 0.0;
  EnergyTerms exact;          // exact mode, for the battery check
  double exact_released_inertia = 0.0;
};

/// A route plus per-arc prefix data, so that a candidate sharing its first
/// k arcs can be re-evaluated by driving only the changed tail.
struct CachedRoute {
  std::vector<int> visits;
  std::vector<double> departures;  // leaving path node a (a = 0 is the depot)
  std::vector<double> released;    // demand delivered before leaving path node a
  std::vector<ArcSums> prefix;     // totals over arcs 0..a-1; size visits + 2
  double demand = 0.0;
  double objective = 0.0;
  double realtime = 0.0;
  bool feasible = true;

  std::size_t size() const { return visits.size(); }
  bool empty() const { return visits.empty(); }
};

/// Fast route scoring under one instance and evaluation setting. Returns
/// numbers identical (up to summation order) to evaluate_route.
class RouteEvaluator {
 public:
  RouteEvaluator(const Instance& instance, EvalOptions options);

  enum class Status { Ok, Pruned, Infeasible };
  struct Score {
    Status status = Status::Infeasible;
    double objective = std::numeric_limits<double>::infinity();
    double realtime = std::numeric_limits<double>::infinity();
    bool ok() const { return status == Status::Ok; }
  };

  static constexpr double kNoBound = std::numeric_limits<double>::infinity();

  const Instance& instance() const { return *instance_; }
  const EvalOptions& options() const { return options_; }

  /// Full evaluation with prefix caches. `feasible` is false when capacity,
  /// battery or horizon is violated.
  CachedRoute build(std::vector<int> visits) const;

  /// Scores the route made of `base`'s first `keep` arcs (path nodes
  /// 0..keep) followed by `tail` and the end depot, for total demand
  /// `demand`. Gives up with Pruned once the objective exceeds `bound`.
  Score score_tail(const CachedRoute& base, std::size_t keep, std::span<const int> tail,
                   double demand, double bound = kNoBound) const;

  /// Scores a stand-alone visit list.
  Score score(std::span<const int> visits, double bound = kNoBound) const;

  /// Objective and real-time battery energy for totals `s` at demand `demand`.
  double objective_of(const ArcSums& s, double demand) const;
  double realtime_of(const ArcSums& s, double demand) const;

  double route_demand(std::span<const int> visits) const;

 private:
  const Instance* instance_;
  EvalOptions options_;
  bool approx_;
};

}  // namespace aldvrp
