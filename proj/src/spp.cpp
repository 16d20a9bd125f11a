#include "aldvrp/spp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace aldvrp {

std::string_view spp_status_name(SppStatus status) {
  switch (status) {
    case SppStatus::Optimal: return "optimal";
    case SppStatus::Timeout: return "timeout";
    case SppStatus::NoPartition: return "no-partition";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct PreparedColumn {
  std::vector<std::uint64_t> mask;
  std::vector<int> customers;  // internal labels, ascending
  double cost = 0.0;
  double reduced = 0.0;  // cost minus the shares of its customers
  std::size_t source = 0;
};

// Depth-first search over one column set. Customers are relabelled so that
// those held by the fewest columns come first; the search always branches
// on the first uncovered customer in that order.
class PartitionSearch {
 public:
  PartitionSearch(std::span<const Column> columns, int n, int max_routes, double upper_bound,
                  Clock::time_point deadline)
      : n_(n),
        words_(static_cast<std::size_t>(n) / 64 + 1),
        max_routes_(max_routes),
        best_(upper_bound),
        deadline_(deadline),
        reduced_by_source_(columns.size(), kInf) {
    prepare(columns);
  }

  bool coverable() const { return coverable_; }
  double root_bound() const { return root_; }
  /// Reduced cost of input column k; inf for columns the search never uses.
  double reduced_cost(std::size_t k) const { return reduced_by_source_[k]; }

  PartitionResult run(double upper_bound) {
    best_ = upper_bound;
    best_chosen_.clear();
    timed_out_ = false;
    PartitionResult out;
    if (coverable_) {
      covered_.assign(words_, 0);
      double rest = 0.0;
      for (int c = 1; c <= n_; ++c) rest += share_[static_cast<std::size_t>(c)];
      dfs(1, 0.0, rest);
    }
    out.nodes = nodes_;
    if (!best_chosen_.empty()) {
      out.chosen = best_chosen_;
      out.cost = best_;
    }
    if (timed_out_) {
      out.status = SppStatus::Timeout;
    } else {
      out.status = best_chosen_.empty() ? SppStatus::NoPartition : SppStatus::Optimal;
    }
    return out;
  }

 private:
  bool covered(int c) const {
    return (covered_[static_cast<std::size_t>(c) / 64] >> (static_cast<unsigned>(c) % 64)) & 1u;
  }

  void prepare(std::span<const Column> columns) {
    std::vector<int> count(static_cast<std::size_t>(n_) + 1, 0);
    for (const Column& col : columns) {
      for (int c : col.visits) {
        if (c >= 1 && c <= n_) ++count[static_cast<std::size_t>(c)];
      }
    }
    std::vector<int> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return count[static_cast<std::size_t>(a)] < count[static_cast<std::size_t>(b)];
    });
    std::vector<int> label(static_cast<std::size_t>(n_) + 1, 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      label[static_cast<std::size_t>(order[i])] = static_cast<int>(i) + 1;
    }

    share_.assign(static_cast<std::size_t>(n_) + 1, kInf);
    share_[0] = 0.0;
    std::vector<PreparedColumn> prepared;
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const Column& col = columns[k];
      if (col.visits.empty()) continue;
      PreparedColumn p;
      p.mask.assign(words_, 0);
      p.cost = col.cost;
      p.source = k;
      bool valid = true;
      for (int raw : col.visits) {
        if (raw < 1 || raw > n_) {
          valid = false;
          break;
        }
        const int c = label[static_cast<std::size_t>(raw)];
        auto& word = p.mask[static_cast<std::size_t>(c) / 64];
        const std::uint64_t bit = std::uint64_t{1} << (static_cast<unsigned>(c) % 64);
        if (word & bit) {
          valid = false;  // repeats a customer: can never be part of a partition
          break;
        }
        word |= bit;
        p.customers.push_back(c);
      }
      if (!valid) continue;
      std::sort(p.customers.begin(), p.customers.end());
      const double per = p.cost / static_cast<double>(p.customers.size());
      for (int c : p.customers) {
        auto& a = share_[static_cast<std::size_t>(c)];
        a = std::min(a, per);
      }
      prepared.push_back(std::move(p));
    }
    coverable_ = true;
    for (int c = 1; c <= n_; ++c) coverable_ = coverable_ && share_[static_cast<std::size_t>(c)] < kInf;
    if (!coverable_) return;

    // Only the cheapest column of each customer set can be part of an
    // optimal partition; orders of the same set differ only in cost.
    std::stable_sort(prepared.begin(), prepared.end(), [](const PreparedColumn& a, const PreparedColumn& b) {
      return a.mask != b.mask ? a.mask < b.mask : a.cost < b.cost;
    });
    prepared.erase(std::unique(prepared.begin(), prepared.end(),
                               [](const PreparedColumn& a, const PreparedColumn& b) { return a.mask == b.mask; }),
                   prepared.end());
    improve_shares(prepared);

    // Every candidate column at a node branching on customer c has c as its
    // smallest customer, since all lower customers are already covered.
    by_first_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (auto& p : prepared) {
      p.reduced = p.cost;
      for (int c : p.customers) p.reduced -= share_[static_cast<std::size_t>(c)];
      reduced_by_source_[p.source] = p.reduced;
      const int first = p.customers.front();
      by_first_[static_cast<std::size_t>(first)].push_back(std::move(p));
    }
    for (auto& group : by_first_) {
      std::stable_sort(group.begin(), group.end(), [](const PreparedColumn& a, const PreparedColumn& b) {
        return a.reduced < b.reduced;
      });
    }
  }

  // Customer shares u give the bound sum(u) + sum_j min(0, c_j - u(j)) on any
  // partition, and sum over uncovered customers plus the same negative part
  // on any completion. Starts from the cheapest per-customer amortized costs
  // and improves them by subgradient steps on that bound.
  void improve_shares(const std::vector<PreparedColumn>& prepared) {
    const std::size_t m = static_cast<std::size_t>(n_) + 1;
    std::vector<double> u = share_;
    auto evaluate = [&](const std::vector<double>& w, std::vector<double>* grad) {
      double value = 0.0;
      for (std::size_t i = 1; i < m; ++i) value += w[i];
      if (grad) grad->assign(m, 1.0);
      for (const PreparedColumn& p : prepared) {
        double rc = p.cost;
        for (int c : p.customers) rc -= w[static_cast<std::size_t>(c)];
        if (rc < 0.0) {
          value += rc;
          if (grad) {
            for (int c : p.customers) (*grad)[static_cast<std::size_t>(c)] -= 1.0;
          }
        }
      }
      return value;
    };
    double best_value = evaluate(u, nullptr);
    const double target0 = std::isfinite(best_) ? best_ : 1.05 * best_value + 1.0;
    double lambda = 2.0;
    int stall = 0;
    std::vector<double> grad;
    for (int iter = 0; iter < kSubgradientIterations && lambda > 1e-4; ++iter) {
      const double value = evaluate(u, &grad);
      if (value > best_value) {
        best_value = value;
        share_ = u;
        stall = 0;
      } else if (++stall >= 20) {
        lambda *= 0.5;
        stall = 0;
      }
      double norm = 0.0;
      for (std::size_t i = 1; i < m; ++i) norm += grad[i] * grad[i];
      if (norm == 0.0) break;  // the relaxed choice is itself a partition
      const double target = std::max(target0, best_value + 1e-6 * std::abs(best_value));
      const double step = lambda * (target - value) / norm;
      for (std::size_t i = 1; i < m; ++i) u[i] += step * grad[i];
      if ((iter & 31) == 0 && Clock::now() > deadline_) break;
    }
    negative_ = 0.0;
    for (const PreparedColumn& p : prepared) {
      double rc = p.cost;
      for (int c : p.customers) rc -= share_[static_cast<std::size_t>(c)];
      negative_ += std::min(0.0, rc);
    }
    root_ = negative_;
    for (std::size_t i = 1; i < m; ++i) root_ += share_[i];
  }

  bool disjoint(const PreparedColumn& p) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if (p.mask[w] & covered_[w]) return false;
    }
    return true;
  }

  void dfs(int from, double cost, double rest) {
    if (timed_out_) return;
    if ((++nodes_ & 1023u) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    int c = from;
    while (c <= n_ && covered(c)) ++c;
    if (c > n_) {
      if (cost < best_) {
        best_ = cost;
        best_chosen_ = chosen_;
      }
      return;
    }
    if (static_cast<int>(chosen_.size()) >= max_routes_) return;
    // slack against rounding in the running sums
    const double margin = 1e-10 * std::abs(best_);
    for (const PreparedColumn& p : by_first_[static_cast<std::size_t>(c)]) {
      // Columns are sorted by reduced cost, so the bound only grows from here.
      if (cost + rest + negative_ + p.reduced >= best_ + margin) break;
      if (!disjoint(p)) continue;
      double used = 0.0;
      for (int x : p.customers) used += share_[static_cast<std::size_t>(x)];
      for (std::size_t w = 0; w < words_; ++w) covered_[w] |= p.mask[w];
      chosen_.push_back(p.source);
      dfs(c + 1, cost + p.cost, rest - used);
      chosen_.pop_back();
      for (std::size_t w = 0; w < words_; ++w) covered_[w] &= ~p.mask[w];
      if (timed_out_) return;
    }
  }

  static constexpr int kSubgradientIterations = 1000;

  int n_;
  std::size_t words_;
  int max_routes_;
  double best_;
  Clock::time_point deadline_;
  bool coverable_ = false;
  bool timed_out_ = false;
  std::size_t nodes_ = 0;
  std::vector<double> share_;
  double negative_ = 0.0;  // sum of negative reduced costs, <= 0
  double root_ = 0.0;
  std::vector<double> reduced_by_source_;
  std::vector<std::vector<PreparedColumn>> by_first_;
  std::vector<std::uint64_t> covered_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_chosen_;
};

}  // namespace

PartitionResult solve_partition(std::span<const Column> columns, int n, int max_routes,
                                double upper_bound, const SppOptions& options) {
  const Clock::time_point deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(options.time_limit));
  PartitionSearch full(columns, n, max_routes, upper_bound, deadline);
  if (!full.coverable()) return {};

  // Restricted passes first: only the columns whose reduced cost is a small
  // fraction of the gap, each searched on its own (tighter) bound. They find
  // good partitions early; the final pass over every column stays exact.
  double best = upper_bound;
  std::vector<std::size_t> chosen;
  std::size_t nodes = 0;
  std::size_t previous = 0;
  if (std::isfinite(upper_bound)) {
    for (double f = 1.0 / 64.0; f < 1.0; f *= 2.0) {
      const auto now = Clock::now();
      if (now >= deadline) break;
      const double limit = f * (best - full.root_bound());
      std::vector<std::size_t> keep;
      for (std::size_t k = 0; k < columns.size(); ++k) {
        if (full.reduced_cost(k) <= limit) keep.push_back(k);
      }
      if (keep.size() == previous) continue;
      previous = keep.size();
      std::vector<Column> subset;
      subset.reserve(keep.size());
      for (std::size_t k : keep) subset.push_back(columns[k]);
      PartitionSearch pass(subset, n, max_routes, best, now + (deadline - now) / 4);
      const PartitionResult r = pass.run(best);
      nodes += r.nodes;
      if (!r.chosen.empty()) {
        best = r.cost;
        chosen.clear();
        for (std::size_t k : r.chosen) chosen.push_back(keep[k]);
      }
    }
  }

  PartitionResult out;
  if (Clock::now() < deadline) {
    out = full.run(best);
  } else {
    out.status = SppStatus::Timeout;
  }
  out.nodes += nodes;
  if (out.chosen.empty() && !chosen.empty()) {
    out.chosen = std::move(chosen);
    out.cost = best;
    // nothing cheaper than the pass result exists if the full pass finished
    if (out.status == SppStatus::NoPartition) out.status = SppStatus::Optimal;
  }
  return out;
}

SppResult solve_spp(const RoutePool& pool, const Instance& instance, const Solution& incumbent,
                    const EvalOptions& options, const SppOptions& spp) {
  const std::vector<Column> columns = pool.snapshot();
  const bool has_incumbent = !incumbent.routes.empty();
  const double cap = has_incumbent ? incumbent.objective : kInf;
  // Admit partitions tied with the incumbent so that "no partition" is only
  // reported when the pool really lacks one at that cost.
  const double bound = has_incumbent ? cap + 1e-9 * std::abs(cap) : cap;
  PartitionResult part =
      solve_partition(columns, instance.customer_count(), instance.fleet_size(), bound, spp);

  SppResult out;
  out.status = part.status;
  out.nodes = part.nodes;
  out.solution = incumbent;
  if (part.chosen.empty()) return out;
  if (has_incumbent && !(part.cost < cap - 1e-9 * std::abs(cap))) return out;

  std::vector<std::vector<int>> routes;
  for (std::size_t k : part.chosen) routes.push_back(columns[k].visits);
  Solution candidate = make_solution(routes, instance, options);
  if (!has_incumbent || candidate.objective < incumbent.objective) {
    out.solution = std::move(candidate);
    out.improved = has_incumbent;
  }
  return out;
}

}  // namespace aldvrp
