// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass criterion names as arguments to run a subset.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "aldvrp/energy.hpp"
#include "aldvrp/errors.hpp"
#include "aldvrp/evaluate.hpp"
#include "aldvrp/oracle.hpp"
#include "aldvrp/search.hpp"
#include "aldvrp/split.hpp"
#include "aldvrp/spp.hpp"
#include "aldvrp/timetravel.hpp"
#include "support.hpp"

using namespace aldvrp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome energy_exactness() {
  constexpr int kCases = 10000;
  constexpr double kTol = 1e-9;
  constexpr double kLimit = 60.0;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto t0 = Clock::now();
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < kCases; ++i) {
    std::vector<double> t{40.0 * u(rng)};
    std::vector<double> v{0.1 + 1.4 * u(rng)};
    const int k = 1 + static_cast<int>(u(rng) * 8);
    for (int j = 0; j < k; ++j) {
      t.push_back(t.back() + 1.0 + 40.0 * u(rng));
      v.push_back(u(rng) < 0.1 ? 0.0 : 1.6 * u(rng));
    }
    v.back() = std::max(v.back(), 0.2);
    VehicleParams p;
    p.mass = 500.0 + 2500.0 * u(rng);
    p.coeff_r = 1.0 + 50.0 * u(rng);
    p.coeff_s = 20.0 * u(rng);
    p.coeff_c = 20.0 * u(rng);
    const double d = 0.2 + 30.0 * u(rng);
    const double depart = 80.0 * u(rng);
    const double load = 500.0 * u(rng);
    const SpeedProfile prof(t, v);
    const ArcEnergy arc = arc_energy(prof, d, depart, load, p);
    const double quad = testsupport::simpson_energy(t, v, depart, arc.arrival, load, p, 100000);
    const double e = rel(arc.energy, quad);
    worst = std::max(worst, e);
    if (e <= kTol) ++ok;
  }
  const double secs = seconds_since(t0);
  return {ok == kCases && secs < kLimit,
          fmt("%d/%d cases within rel %.0e (max %.2e), %.1f s (limit %.0f s)", ok, kCases, kTol,
              worst, secs, kLimit)};
}

Outcome fifo() {
  constexpr int kInstances = 10;
  constexpr int kGrid = 1000;
  long arcs = 0;
  long violations = 0;
  for (int s = 0; s < kInstances; ++s) {
    const Instance inst = generate_instance(25, static_cast<std::uint64_t>(500 + s));
    std::vector<double> grid(kGrid);
    for (int g = 0; g < kGrid; ++g) grid[static_cast<std::size_t>(g)] = inst.horizon() * g / kGrid;
    for (int i = 0; i < inst.node_count(); ++i) {
      for (int j = 0; j < inst.node_count(); ++j) {
        if (i == j || inst.distance(i, j) <= 0.0) continue;
        ++arcs;
        const SpeedProfile& prof = inst.profile(i, j);
        double prev = -1.0;
        for (double dep : grid) {
          const double a = arrival_time(prof, inst.distance(i, j), dep);
          if (a < prev) ++violations;
          prev = a;
        }
      }
    }
  }
  return {violations == 0, fmt("%ld violations over %ld arcs x %d departures on %d instances",
                               violations, arcs, kGrid, kInstances)};
}

Outcome oracle_equivalence() {
  constexpr int kRuns = 20;
  constexpr int kNeeded = 19;
  constexpr double kTol = 1e-9;
  constexpr double kLimit = 30.0;
  const int sizes[] = {4, 7, 8};
  int matched = 0;
  double slowest = 0.0;
  for (int k = 0; k < kRuns; ++k) {
    GeneratorConfig gen;
    gen.fleet_size = 1;
    gen.vehicle.load_capacity = 1000.0;  // one vehicle carries everything
    const int n = sizes[k % 3];
    const Instance inst = generate_instance(n, static_cast<std::uint64_t>(900 + k), gen);
    const double opt = exact_solve(inst).objective;
    const auto t0 = Clock::now();
    const LnsResult res = lns_run(inst, SearchConfig{}, static_cast<std::uint64_t>(k + 1),
                                  Budget::iters(5000));
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    if (rel(res.best.objective, opt) <= kTol && secs < kLimit) ++matched;
  }
  return {matched >= kNeeded,
          fmt("%d/%d runs match exact_solve within rel %.0e (need %d), slowest run %.1f s "
              "(limit %.0f s)",
              matched, kRuns, kTol, kNeeded, slowest, kLimit)};
}

Outcome load_model_gaps() {
  constexpr int kInstances = 16;
  constexpr long kIters = 1000;
  int no_negative = 0;
  int ini_nonneg = 0;
  std::string rows;
  for (int k = 0; k < kInstances; ++k) {
    const int n = 30 + (84 * k) / (kInstances - 1);
    const Instance inst = generate_instance(n, static_cast<std::uint64_t>(1000 + k));
    Solution sols[3];
    const LoadModel models[] = {LoadModel::RealTime, LoadModel::NoLoad, LoadModel::InitialLoad};
    for (int m = 0; m < 3; ++m) {
      SearchConfig cfg;
      cfg.eval.load_model = models[m];
      sols[m] = solve(inst, cfg, 1, Budget::iters(kIters)).best;
    }
    const EvalReport rep = compare_load_models(sols[0], sols[1], sols[2], inst);
    if (rep.G_no_load < 0.0) ++no_negative;
    if (rep.G_ini_load >= 0.0) ++ini_nonneg;
    rows += fmt(" n=%d:%+.2f/%+.2f", n, rep.G_no_load, rep.G_ini_load);
  }
  return {no_negative == kInstances && ini_nonneg >= 14,
          fmt("G_no_load < 0 in %d/%d (need 16), G_ini_load >= 0 in %d/%d (need 14);", no_negative,
              kInstances, ini_nonneg, kInstances) +
              rows};
}

// Exhaustive minimum over all contiguous partitions of the tour.
double exhaustive_split(const std::vector<int>& tour, const Instance& inst) {
  const int n = static_cast<int>(tour.size());
  const VehicleParams& vp = inst.vehicle();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    if (std::popcount(mask) + 1 > inst.fleet_size()) continue;
    double total = 0.0;
    int start = 0;
    bool ok = true;
    for (int pos = 0; pos < n && ok; ++pos) {
      if (pos == n - 1 || ((mask >> pos) & 1u)) {
        const std::vector<int> seg(tour.begin() + start, tour.begin() + pos + 1);
        try {
          const Route r = evaluate_route(seg, inst);
          ok = r.demand <= vp.load_capacity && r.realtime_energy <= vp.battery_capacity;
          total += r.energy;
        } catch (const HorizonExceeded&) {
          ok = false;
        }
        start = pos + 1;
      }
    }
    if (ok) best = std::min(best, total);
  }
  return best;
}

Outcome split_optimality() {
  constexpr int kTours = 200;
  std::mt19937_64 rng(77);
  int ok = 0;
  for (int k = 0; k < kTours; ++k) {
    const int n = 1 + static_cast<int>(rng() % 10);
    GeneratorConfig gen;
    gen.vehicle.load_capacity = 120.0 + 150.0 * static_cast<double>(rng() % 3);
    if (k % 4 == 0) gen.vehicle.battery_capacity = 2500.0;
    const Instance inst = generate_instance(n, static_cast<std::uint64_t>(3000 + k), gen);
    std::vector<int> tour(static_cast<std::size_t>(n));
    std::iota(tour.begin(), tour.end(), 1);
    std::shuffle(tour.begin(), tour.end(), rng);
    const double want = exhaustive_split(tour, inst);
    double got = std::numeric_limits<double>::infinity();
    try {
      got = split_tour(tour, inst).cost;
    } catch (const InfeasibleError&) {
    }
    if ((std::isinf(want) && std::isinf(got)) || rel(got, want) <= 1e-9) ++ok;
  }
  return {ok == kTours, fmt("%d/%d tours equal the exhaustive optimum", ok, kTours)};
}

Outcome spp_exactness() {
  constexpr int kPools = 50;
  std::mt19937_64 rng(4242);
  int ok = 0;
  int with_partition = 0;
  for (int k = 0; k < kPools; ++k) {
    const int n = 4 + static_cast<int>(rng() % 6);
    const Instance inst = generate_instance(n, static_cast<std::uint64_t>(7000 + k));
    const int m = 8 + static_cast<int>(rng() % 13);
    RoutePool pool;
    while (static_cast<int>(pool.size()) < m) {
      const int len = 1 + static_cast<int>(rng() % 4);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);
      perm.resize(static_cast<std::size_t>(std::min(len, n)));
      const Route r = evaluate_route(perm, inst);
      if (r.demand <= inst.vehicle().load_capacity) pool_add(pool, r);
    }
    const std::vector<Column> cols = pool.snapshot();
    double want = std::numeric_limits<double>::infinity();
    const unsigned full = (1u << n) - 1;
    for (unsigned s = 1; s < (1u << cols.size()); ++s) {
      if (std::popcount(s) > inst.fleet_size()) continue;
      unsigned cover = 0;
      double cost = 0.0;
      bool disjoint = true;
      for (std::size_t j = 0; j < cols.size() && disjoint; ++j) {
        if (!((s >> j) & 1u)) continue;
        for (int c : cols[j].visits) {
          const unsigned bit = 1u << (c - 1);
          if (cover & bit) disjoint = false;
          cover |= bit;
        }
        cost += cols[j].cost;
      }
      if (disjoint && cover == full) want = std::min(want, cost);
    }
    const SppResult res = solve_spp(pool, inst, Solution{});
    const bool found = !res.solution.routes.empty();
    if (std::isinf(want)) {
      if (!found && res.status == SppStatus::NoPartition) ++ok;
    } else {
      ++with_partition;
      if (found && res.status == SppStatus::Optimal && rel(res.solution.objective, want) <= 1e-9) ++ok;
    }
  }
  return {ok == kPools, fmt("%d/%d pools match subset enumeration (%d with a partition)", ok, kPools,
                            with_partition)};
}

Outcome scale() {
  constexpr double kGain = 1.0;
  constexpr double kLimit = 300.0;
  const Instance inst = generate_instance(114, 1);
  SearchConfig cfg;
  cfg.pool_threshold = 0;  // LNS alone, set partitioning only at the end
  cfg.spp_time_limit = 120.0;
  const auto t0 = Clock::now();
  const SolveResult res = solve(inst, cfg, 1, Budget::iters(15000));
  const double secs = seconds_since(t0);
  const bool feasible = check_feasible(res.best, inst).feasible();
  const double gain = 100.0 * (res.lns_best.objective - res.best.objective) / res.lns_best.objective;
  return {feasible && gain >= kGain && secs < kLimit,
          fmt("n=114 seed 1, LNS best %.2f, after SPP %.2f (%s, %zu columns): gain %.2f%% (need %.1f%%), "
              "feasible %s, %.0f s (limit %.0f s)",
              res.lns_best.objective, res.best.objective,
              std::string(spp_status_name(res.spp_status)).c_str(), res.pool.size(), gain, kGain,
              feasible ? "yes" : "no", secs, kLimit)};
}

Outcome monotonicity() {
  constexpr int kTrials = 1000;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const VehicleParams p{};
  int load_bad = 0;
  int split_bad = 0;
  int history_bad = 0;
  for (int i = 0; i < kTrials; ++i) {
    std::vector<double> t{20.0 * u(rng)};
    std::vector<double> v{0.2 + 1.2 * u(rng)};
    for (int j = 0; j < 5; ++j) {
      t.push_back(t.back() + 2.0 + 30.0 * u(rng));
      v.push_back(0.05 + 1.5 * u(rng));
    }
    const SpeedProfile prof(t, v);
    const double d = 0.5 + 25.0 * u(rng);
    const double dep = 60.0 * u(rng);
    const double l1 = 400.0 * u(rng);
    const double l2 = l1 + 100.0 * u(rng);
    if (arc_energy(prof, d, dep, l1, p).energy > arc_energy(prof, d, dep, l2, p).energy) ++load_bad;

    // driving d in one go equals driving d1 and then the rest without a stop
    const double d1 = d * u(rng);
    const ArcEnergy whole = arc_energy(prof, d, dep, l1, p);
    const ArcEnergy first = arc_energy(prof, d1, dep, l1, p);
    const ArcEnergy second = arc_energy(prof, d - d1, first.arrival, l1, p);
    if (std::abs(first.energy + second.energy - whole.energy) > 1e-9 * whole.energy ||
        std::abs(second.arrival - whole.arrival) > 1e-9 * whole.arrival) {
      ++split_bad;
    }

    const Instance inst = generate_instance(8 + i % 5, static_cast<std::uint64_t>(10000 + i));
    SearchConfig cfg;
    cfg.pool_threshold = 50;
    const LnsResult res = lns_run(inst, cfg, static_cast<std::uint64_t>(i), Budget::iters(30));
    for (std::size_t h = 1; h < res.best_history.size(); ++h) {
      if (res.best_history[h] > res.best_history[h - 1]) {
        ++history_bad;
        break;
      }
    }
  }
  return {load_bad == 0 && split_bad == 0 && history_bad == 0,
          fmt("violations over %d trials each: load %d, segment splitting %d, best history %d",
              kTrials, load_bad, split_bad, history_bad)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"energy-exactness", energy_exactness},
      {"fifo", fifo},
      {"oracle-equivalence", oracle_equivalence},
      {"load-model-gaps", load_model_gaps},
      {"split-optimality", split_optimality},
      {"spp-exactness", spp_exactness},
      {"scale", scale},
      {"monotonicity", monotonicity},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (argc > 1 && std::find_if(argv + 1, argv + argc, [&](const char* a) {
                      return std::string(a) == c.name;
                    }) == argv + argc) {
      continue;
    }
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
