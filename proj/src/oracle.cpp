#include "aldvrp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <limits>
#include <string>

#include "aldvrp/errors.hpp"

namespace aldvrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Depth-first enumeration of every visit order, recording the cheapest
// order per customer subset. Arc sums are kept load-free (see EnergyTerms)
// so that the route's total demand is only needed when closing the route.
class OrderEnumerator {
 public:
  OrderEnumerator(const Instance& inst, const EvalOptions& opts)
      : inst_(inst), opts_(opts), n_(inst.customer_count()),
        cost_(std::size_t{1} << n_, kInf), order_(std::size_t{1} << n_) {}

  void run() {
    seq_.clear();
    extend(0, 0, 0.0, 0.0, {}, 0.0, {}, 0.0);
  }

  double cost(std::size_t mask) const { return cost_[mask]; }
  const std::vector<int>& order(std::size_t mask) const { return order_[mask]; }

 private:
  struct Step {
    double t;
    EnergyTerms terms;
    double rel_inertia;
    EnergyTerms exact;
    double exact_rel_inertia;
  };

  std::optional<Step> drive(int from, int to, double t, double released, EnergyTerms terms,
                            double rel, EnergyTerms exact, double exact_rel) const {
    const bool approx = opts_.energy_mode == EnergyMode::MinlpApprox;
    const auto trav = traverse_arc(inst_.profile(from, to), inst_.distance(from, to), t,
                                   inst_.vehicle(), inst_.horizon(), approx);
    if (!trav) return std::nullopt;
    const EnergyTerms& mt = trav->terms(opts_.energy_mode);
    terms += mt;
    rel += released * mt.inertia;
    exact += trav->exact;
    exact_rel += released * trav->exact.inertia;
    return Step{trav->arrival, terms, rel, exact, exact_rel};
  }

  void extend(std::size_t mask, int last, double t, double demand, EnergyTerms terms, double rel,
              EnergyTerms exact, double exact_rel) {
    const VehicleParams& vp = inst_.vehicle();
    if (mask != 0) {
      // demand == delivered so far == route demand once closed
      const auto close = drive(last, inst_.end_depot(), t, demand, terms, rel, exact, exact_rel);
      if (close) {
        const double realtime =
            close->exact.drive + (vp.mass + demand) * close->exact.inertia - close->exact_rel_inertia;
        double objective = 0.0;
        switch (opts_.load_model) {
          case LoadModel::RealTime:
            objective = close->terms.drive + (vp.mass + demand) * close->terms.inertia -
                        close->rel_inertia;
            break;
          case LoadModel::NoLoad: objective = close->terms.at_load(vp.mass, 0.0); break;
          case LoadModel::InitialLoad: objective = close->terms.at_load(vp.mass, demand); break;
        }
        if (realtime <= vp.battery_capacity && objective < cost_[mask]) {
          cost_[mask] = objective;
          order_[mask] = seq_;
        }
      }
    }
    for (int v = 1; v <= n_; ++v) {
      const std::size_t bit = std::size_t{1} << (v - 1);
      if (mask & bit) continue;
      const double q = inst_.demand(v);
      if (demand + q > vp.load_capacity) continue;
      const auto step = drive(last, v, t, demand, terms, rel, exact, exact_rel);
      if (!step) continue;
      seq_.push_back(v);
      extend(mask | bit, v, step->t + opts_.service_time, demand + q, step->terms,
             step->rel_inertia, step->exact, step->exact_rel_inertia);
      seq_.pop_back();
    }
  }

  const Instance& inst_;
  const EvalOptions& opts_;
  int n_;
  std::vector<double> cost_;
  std::vector<std::vector<int>> order_;
  std::vector<int> seq_;
};

}  // namespace

Solution exact_solve(const Instance& instance, const OracleOptions& options) {
  const int n = instance.customer_count();
  if (n > options.max_customers) {
    throw ValidationError("instance too large for exact_solve: " + std::to_string(n) +
                          " customers, limit " + std::to_string(options.max_customers));
  }
  if (n > 20) throw ValidationError("instance too large for exact_solve");
  OrderEnumerator orders(instance, options.eval);
  orders.run();

  // f[k][mask]: cheapest split of `mask` into exactly k routes; the route
  // holding the lowest customer of `mask` is chosen first.
  const std::size_t full = (std::size_t{1} << n) - 1;
  const int K = std::min(instance.fleet_size(), std::max(n, 1));
  std::vector<std::vector<double>> f(static_cast<std::size_t>(K) + 1,
                                     std::vector<double>(full + 1, kInf));
  std::vector<std::vector<std::size_t>> pick(f.size(), std::vector<std::size_t>(full + 1, 0));
  f[0][0] = 0.0;
  for (int k = 1; k <= K; ++k) {
    auto& fk = f[static_cast<std::size_t>(k)];
    const auto& prev = f[static_cast<std::size_t>(k) - 1];
    for (std::size_t mask = 1; mask <= full; ++mask) {
      const std::size_t low = mask & (~mask + 1);
      const std::size_t rest = mask ^ low;
      // submasks of rest, ascending
      for (std::size_t s = 0;; s = (s - rest) & rest) {
        const std::size_t route = s | low;
        const double c = orders.cost(route);
        if (c < kInf && prev[mask ^ route] < kInf) {
          const double total = c + prev[mask ^ route];
          if (total < fk[mask]) {
            fk[mask] = total;
            pick[static_cast<std::size_t>(k)][mask] = route;
          }
        }
        if (s == rest) break;
      }
    }
  }

  int best_k = -1;
  double best = kInf;
  for (int k = n == 0 ? 0 : 1; k <= K; ++k) {
    if (f[static_cast<std::size_t>(k)][full] < best) {
      best = f[static_cast<std::size_t>(k)][full];
      best_k = k;
    }
  }
  if (best_k < 0) throw InfeasibleError("infeasible instance: no feasible partition of customers");

  std::vector<std::vector<int>> routes;
  std::size_t mask = full;
  for (int k = best_k; k > 0; --k) {
    const std::size_t route = pick[static_cast<std::size_t>(k)][mask];
    routes.push_back(orders.order(route));
    mask ^= route;
  }
  return make_solution(routes, instance, options.eval);
}

double quad_energy(const SpeedProfile& profile, double distance, double depart, double load,
                   const VehicleParams& params, int steps, double horizon) {
  if (steps < 1000) throw ValidationError("quad_energy: steps must be at least 1000");
  const double arrival = arrival_time(profile, distance, depart, horizon);
  const double span = arrival - depart;
  if (!(span > 0.0)) return 0.0;

  std::vector<double> cuts{depart};
  for (double b : profile.breakpoints()) {
    if (b > depart && b < arrival) cuts.push_back(b);
  }
  cuts.push_back(arrival);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    const double accel = profile.piece(profile.piece_index(0.5 * (a + b))).accel;
    int m = static_cast<int>(std::ceil(steps * (b - a) / span));
    m = std::max(2, m + (m & 1));
    const double h = (b - a) / m;
    auto f = [&](double t) { return power(profile.speed_at(t), accel, load, params); };
    double sum = f(a) + f(b);
    for (int j = 1; j < m; ++j) sum += (j & 1 ? 4.0 : 2.0) * f(a + j * h);
    total += sum * h / 3.0;
  }
  return total;
}

}  // namespace aldvrp
