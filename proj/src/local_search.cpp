#include <algorithm>
#include <limits>
#include <numeric>

#include "aldvrp/search.hpp"

namespace aldvrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class LocalSearch {
 public:
  LocalSearch(WorkingSolution& sol, const SearchConfig& config)
      : sol_(sol), eval_(sol.evaluator()), inst_(sol.instance()) {
    build_neighbors(config.granular_neighbors);
  }

  bool run() {
    bool changed = false;
    for (;;) {
      eps_ = 1e-10 * std::max(1.0, sol_.objective());
      bool improved = false;
      for (int c = 1; c <= inst_.customer_count(); ++c) {
        if (sol_.route_of(c) < 0) continue;
        if (relocate(c) || swap(c) || exchange_tails(c)) improved = true;
      }
      for (std::size_t r = 0; r < sol_.route_count(); ++r) improved = two_opt(r) || improved;
      if (!improved) break;
      changed = true;
    }
    return changed;
  }

 private:
  void build_neighbors(int k) {
    const int n = inst_.customer_count();
    neighbors_.assign(static_cast<std::size_t>(n) + 1, {});
    for (int c = 1; c <= n; ++c) {
      auto& list = neighbors_[static_cast<std::size_t>(c)];
      for (int v = 1; v <= n; ++v) {
        if (v != c) list.push_back(v);
      }
      auto dist = [&](int v) { return inst_.distance(c, v) + inst_.distance(v, c); };
      std::stable_sort(list.begin(), list.end(), [&](int a, int b) { return dist(a) < dist(b); });
      if (k > 0 && static_cast<int>(list.size()) > k) list.resize(static_cast<std::size_t>(k));
    }
  }

  double cost_of(std::size_t r, std::size_t keep, std::span<const int> tail, double demand,
                 double bound) const {
    if (tail.empty() && keep == 0) return 0.0;  // route disappears
    const auto s = eval_.score_tail(sol_.route(r), keep, tail, demand, bound);
    return s.ok() ? s.objective : kInf;
  }

  // Rebuilds two routes; `b` may be route_count() for a fresh route.
  void commit(std::size_t a, std::vector<int> seq_a, std::size_t b, std::vector<int> seq_b) {
    if (b == sol_.route_count()) {
      sol_.set_route(b, std::move(seq_b));
      sol_.set_route(a, std::move(seq_a));
      return;
    }
    if (a < b) std::swap(a, b), std::swap(seq_a, seq_b);
    // a > b: rebuilding a first keeps b's index valid if a disappears.
    sol_.set_route(a, std::move(seq_a));
    sol_.set_route(b, std::move(seq_b));
  }

  bool relocate(int c) {
    const auto r1 = static_cast<std::size_t>(sol_.route_of(c));
    const auto i = static_cast<std::size_t>(sol_.position_of(c));
    const CachedRoute& from = sol_.route(r1);
    const double q = inst_.demand(c);

    std::vector<int> without = from.visits;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    const double cost_without =
        cost_of(r1, i, std::span<const int>(without).subspan(i), from.demand - q, kInf);

    // Candidate slots: directly before or after each neighbour.
    for (int v : neighbors_[static_cast<std::size_t>(c)]) {
      const int rv = sol_.route_of(v);
      if (rv < 0) continue;
      const auto r2 = static_cast<std::size_t>(rv);
      const auto j = static_cast<std::size_t>(sol_.position_of(v));
      for (std::size_t slot : {j, j + 1}) {
        if (r2 == r1) {
          if (try_intra_relocate(r1, i, slot)) return true;
          continue;
        }
        if (cost_without == kInf) continue;
        const CachedRoute& to = sol_.route(r2);
        const double old_cost = from.objective + to.objective;
        tail_.assign(1, c);
        tail_.insert(tail_.end(), to.visits.begin() + static_cast<std::ptrdiff_t>(slot), to.visits.end());
        const double budget = old_cost - cost_without - eps_;
        const double cost_to = cost_of(r2, slot, tail_, to.demand + q, budget);
        if (cost_without + cost_to < old_cost - eps_) {
          std::vector<int> seq = to.visits;
          seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(slot), c);
          commit(r1, std::move(without), r2, std::move(seq));
          return true;
        }
      }
    }
    // A vehicle of its own.
    if (from.size() > 1 && static_cast<int>(sol_.route_count()) < inst_.fleet_size() &&
        cost_without < kInf) {
      const auto s = eval_.score(std::span<const int>(&c, 1));
      if (s.ok() && cost_without + s.objective < from.objective - eps_) {
        commit(r1, std::move(without), sol_.route_count(), {c});
        return true;
      }
    }
    return false;
  }

  // Moves position i so the customer ends up in front of the customer
  // currently at `slot` (slot may equal the route length).
  bool try_intra_relocate(std::size_t r, std::size_t i, std::size_t slot) {
    const CachedRoute& route = sol_.route(r);
    if (slot == i || slot == i + 1) return false;
    std::vector<int> seq = route.visits;
    const int c = seq[i];
    seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(i));
    const std::size_t at = slot > i ? slot - 1 : slot;
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(at), c);
    const std::size_t keep = std::min(i, at);
    const double cost = cost_of(r, keep, std::span<const int>(seq).subspan(keep), route.demand,
                                route.objective - eps_);
    if (cost < route.objective - eps_) {
      sol_.set_route(r, std::move(seq));
      return true;
    }
    return false;
  }

  bool swap(int c) {
    const auto r1 = static_cast<std::size_t>(sol_.route_of(c));
    const auto i = static_cast<std::size_t>(sol_.position_of(c));
    for (int v : neighbors_[static_cast<std::size_t>(c)]) {
      const int rv = sol_.route_of(v);
      if (rv < 0) continue;
      const auto r2 = static_cast<std::size_t>(rv);
      const auto j = static_cast<std::size_t>(sol_.position_of(v));
      const CachedRoute& a = sol_.route(r1);
      if (r2 == r1) {
        if (v < c) continue;  // each intra pair once
        std::vector<int> seq = a.visits;
        std::swap(seq[i], seq[j]);
        const std::size_t keep = std::min(i, j);
        const double cost = cost_of(r1, keep, std::span<const int>(seq).subspan(keep), a.demand,
                                    a.objective - eps_);
        if (cost < a.objective - eps_) {
          sol_.set_route(r1, std::move(seq));
          return true;
        }
        continue;
      }
      const CachedRoute& b = sol_.route(r2);
      const double dq = inst_.demand(v) - inst_.demand(c);
      const double old_cost = a.objective + b.objective;
      std::vector<int> seq_a = a.visits;
      std::vector<int> seq_b = b.visits;
      seq_a[i] = v;
      seq_b[j] = c;
      const double cost_a = cost_of(r1, i, std::span<const int>(seq_a).subspan(i), a.demand + dq,
                                    old_cost - eps_);
      if (cost_a == kInf) continue;
      const double cost_b = cost_of(r2, j, std::span<const int>(seq_b).subspan(j), b.demand - dq,
                                    old_cost - cost_a - eps_);
      if (cost_a + cost_b < old_cost - eps_) {
        commit(r1, std::move(seq_a), r2, std::move(seq_b));
        return true;
      }
    }
    return false;
  }

  // 2-opt*: c keeps its prefix and continues with a neighbour's tail.
  bool exchange_tails(int c) {
    const auto r1 = static_cast<std::size_t>(sol_.route_of(c));
    const auto i = static_cast<std::size_t>(sol_.position_of(c));
    for (int v : neighbors_[static_cast<std::size_t>(c)]) {
      const int rv = sol_.route_of(v);
      if (rv < 0 || static_cast<std::size_t>(rv) == r1) continue;
      const auto r2 = static_cast<std::size_t>(rv);
      const auto j = static_cast<std::size_t>(sol_.position_of(v));
      const CachedRoute& a = sol_.route(r1);
      const CachedRoute& b = sol_.route(r2);
      const double head_a = a.released[i + 1];  // demand of a.visits[0..i]
      const double head_b = b.released[j];      // demand of b.visits[0..j-1]
      const double dem_a = head_a + (b.demand - head_b);
      const double dem_b = head_b + (a.demand - head_a);
      const double cap = inst_.vehicle().load_capacity;
      if (dem_a > cap || dem_b > cap) continue;
      std::vector<int> seq_a(a.visits.begin(), a.visits.begin() + static_cast<std::ptrdiff_t>(i + 1));
      seq_a.insert(seq_a.end(), b.visits.begin() + static_cast<std::ptrdiff_t>(j), b.visits.end());
      std::vector<int> seq_b(b.visits.begin(), b.visits.begin() + static_cast<std::ptrdiff_t>(j));
      seq_b.insert(seq_b.end(), a.visits.begin() + static_cast<std::ptrdiff_t>(i + 1), a.visits.end());
      const double old_cost = a.objective + b.objective;
      const double cost_a = cost_of(r1, i + 1, std::span<const int>(seq_a).subspan(i + 1), dem_a,
                                    old_cost - eps_);
      if (cost_a == kInf) continue;
      const double cost_b = cost_of(r2, j, std::span<const int>(seq_b).subspan(j), dem_b,
                                    old_cost - cost_a - eps_);
      if (cost_a + cost_b < old_cost - eps_) {
        commit(r1, std::move(seq_a), r2, std::move(seq_b));
        return true;
      }
    }
    return false;
  }

  // Segment reversal within one route.
  bool two_opt(std::size_t r) {
    bool improved = false;
    for (bool again = true; again;) {
      again = false;
      const CachedRoute& route = sol_.route(r);
      const std::size_t m = route.size();
      for (std::size_t i = 0; i + 1 < m && !again; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          std::vector<int> seq = route.visits;
          std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(i),
                       seq.begin() + static_cast<std::ptrdiff_t>(j + 1));
          const double cost = cost_of(r, i, std::span<const int>(seq).subspan(i), route.demand,
                                      route.objective - eps_);
          if (cost < route.objective - eps_) {
            sol_.set_route(r, std::move(seq));
            improved = again = true;
            break;
          }
        }
      }
    }
    return improved;
  }

  WorkingSolution& sol_;
  const RouteEvaluator& eval_;
  const Instance& inst_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<int> tail_;
  double eps_ = 0.0;
};

}  // namespace

bool local_search(WorkingSolution& sol, const SearchConfig& config) {
  return LocalSearch(sol, config).run();
}

}  // namespace aldvrp
