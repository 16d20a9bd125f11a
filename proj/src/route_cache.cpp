#include "aldvrp/route_cache.hpp"

namespace aldvrp {

RouteEvaluator::RouteEvaluator(const Instance& instance, EvalOptions options)
    : instance_(&instance),
      options_(options),
      approx_(options.energy_mode == EnergyMode::MinlpApprox) {}

double RouteEvaluator::objective_of(const ArcSums& s, double demand) const {
  const double mass = instance_->vehicle().mass;
  switch (options_.load_model) {
    case LoadModel::RealTime:
      return s.terms.drive + (mass + demand) * s.terms.inertia - s.released_inertia;
    case LoadModel::NoLoad:
      return s.terms.drive + mass * s.terms.inertia;
    case LoadModel::InitialLoad:
      return s.terms.drive + (mass + demand) * s.terms.inertia;
  }
  return 0.0;
}

double RouteEvaluator::realtime_of(const ArcSums& s, double demand) const {
  const double mass = instance_->vehicle().mass;
  return s.exact.drive + (mass + demand) * s.exact.inertia - s.exact_released_inertia;
}

double RouteEvaluator::route_demand(std::span<const int> visits) const {
  double d = 0.0;
  for (int c : visits) d += instance_->demand(c);
  return d;
}

namespace {

void accumulate(ArcSums& s, const ArcTraversal& trav, double released, bool approx) {
  s.exact += trav.exact;
  s.exact_released_inertia += released * trav.exact.inertia;
  const EnergyTerms& t = approx ? trav.approx : trav.exact;
  s.terms += t;
  s.released_inertia += released * t.inertia;
}

}  // namespace

CachedRoute RouteEvaluator::build(std::vector<int> visits) const {
  const Instance& inst = *instance_;
  const VehicleParams& vp = inst.vehicle();
  CachedRoute r;
  r.visits = std::move(visits);
  r.demand = route_demand(r.visits);
  const std::size_t m = r.visits.size();
  r.departures.resize(m + 1);
  r.released.resize(m + 1);
  r.prefix.assign(m + 2, ArcSums{});
  r.feasible = r.demand <= vp.load_capacity;

  double t = 0.0;
  double released = 0.0;
  int from = inst.start_depot();
  for (std::size_t a = 0; a <= m; ++a) {
    const int to = a < m ? r.visits[a] : inst.end_depot();
    r.departures[a] = t;
    r.released[a] = released;
    ArcSums next = r.prefix[a];
    auto trav = traverse_arc(inst.profile(from, to), inst.distance(from, to), t, vp,
                             inst.horizon(), approx_);
    if (!trav) {
      // Keep the cache usable for prefixes before the failing arc.
      r.feasible = false;
      for (std::size_t b = a + 1; b < m + 2; ++b) r.prefix[b] = next;
      for (std::size_t b = a + 1; b <= m; ++b) {
        r.departures[b] = inst.horizon();
        r.released[b] = released;
      }
      r.objective = kNoBound;
      r.realtime = kNoBound;
      return r;
    }
    accumulate(next, *trav, released, approx_);
    r.prefix[a + 1] = next;
    if (a < m) {
      t = trav->arrival + options_.service_time;
      released += inst.demand(to);
    }
    from = to;
  }
  r.objective = objective_of(r.prefix[m + 1], r.demand);
  r.realtime = realtime_of(r.prefix[m + 1], r.demand);
  if (r.realtime > vp.battery_capacity) r.feasible = false;
  return r;
}

RouteEvaluator::Score RouteEvaluator::score_tail(const CachedRoute& base, std::size_t keep,
                                                 std::span<const int> tail, double demand,
                                                 double bound) const {
  const Instance& inst = *instance_;
  const VehicleParams& vp = inst.vehicle();
  Score out;
  if (demand > vp.load_capacity) return out;

  ArcSums sums = base.prefix[keep];
  if (objective_of(sums, demand) > bound) {
    out.status = Status::Pruned;
    return out;
  }
  double t = base.departures[keep];
  double released = base.released[keep];
  int from = keep == 0 ? inst.start_depot() : base.visits[keep - 1];
  const std::size_t len = tail.size();
  for (std::size_t a = 0; a <= len; ++a) {
    const int to = a < len ? tail[a] : inst.end_depot();
    auto trav = traverse_arc(inst.profile(from, to), inst.distance(from, to), t, vp,
                             inst.horizon(), approx_);
    if (!trav) return out;
    accumulate(sums, *trav, released, approx_);
    if (realtime_of(sums, demand) > vp.battery_capacity) return out;
    if (objective_of(sums, demand) > bound) {
      out.status = Status::Pruned;
      return out;
    }
    t = trav->arrival + options_.service_time;
    if (a < len) released += inst.demand(to);
    from = to;
  }
  out.status = Status::Ok;
  out.objective = objective_of(sums, demand);
  out.realtime = realtime_of(sums, demand);
  return out;
}

RouteEvaluator::Score RouteEvaluator::score(std::span<const int> visits, double bound) const {
  static const CachedRoute kEmpty = [] {
    CachedRoute r;
    r.departures = {0.0};
    r.released = {0.0};
    r.prefix.assign(2, ArcSums{});
    return r;
  }();
  return score_tail(kEmpty, 0, visits, route_demand(visits), bound);
}

}  // namespace aldvrp
