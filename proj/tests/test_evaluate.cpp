#include <gtest/gtest.h>

#include <random>

#include "aldvrp/errors.hpp"
#include "aldvrp/evaluate.hpp"
#include "support.hpp"

using namespace aldvrp;
using testsupport::point_instance;

namespace {

SpeedProfile wavy() { return SpeedProfile({0.0, 20.0, 40.0, 70.0}, {0.5, 1.2, 0.4, 0.9}); }

Instance six() {
  return point_instance({{1, 2}, {4, 1}, {3, -2}, {-1, -3}, {-4, 0}, {-2, 3}},
                        {30, 45, 20, 60, 25, 50}, wavy(), testsupport::unit_vehicle(), 3);
}

}  // namespace

TEST(EvaluateRoute, EmptyRouteIsDepotArc) {
  // depot copies 2 km apart
  std::vector<Node> nodes{{0, 0, 0, 0}, {1, 1, 1, 5}, {2, 2, 0, 0}};
  std::vector<double> d{0, 1.5, 2, 1.5, 0, 1.5, 2, 1.5, 0};
  Instance inst(nodes, d, {wavy()}, std::vector<int>(9, 0), testsupport::unit_vehicle(), 1, 600);
  const Route r = evaluate_route({}, inst);
  const auto arc = arc_energy(wavy(), 2.0, 0.0, 0.0, inst.vehicle());
  EXPECT_NEAR(r.energy, arc.energy, 1e-12);
  EXPECT_NEAR(r.end_time, arc.arrival, 1e-12);
  ASSERT_EQ(r.departures.size(), 1u);
}

TEST(EvaluateRoute, LoadTermVanishesWithoutAcceleration) {
  // constant speed: no inertia term, so the payload cannot matter
  const Instance inst = point_instance({{3, 4}}, {80}, SpeedProfile({0.0}, {0.7}));
  EvalOptions none;
  none.load_model = LoadModel::NoLoad;
  EXPECT_DOUBLE_EQ(evaluate_route(std::vector<int>{1}, inst).energy,
                   evaluate_route(std::vector<int>{1}, inst, none).energy);
}

TEST(EvaluateRoute, ScheduleMatchesArcByArcRecomputation) {
  const Instance inst = six();
  const std::vector<int> visits{3, 1, 5, 2};
  EvalOptions opts;
  opts.service_time = 2.5;
  const Route r = evaluate_route(visits, inst, opts);
  double t = 0.0;
  double load = 0.0;
  for (int c : visits) load += inst.demand(c);
  EXPECT_DOUBLE_EQ(r.demand, load);
  double energy = 0.0;
  int from = 0;
  std::vector<int> path = visits;
  path.push_back(inst.end_depot());
  for (std::size_t k = 0; k < path.size(); ++k) {
    const int to = path[k];
    EXPECT_NEAR(r.departures[k], t, 1e-9);
    EXPECT_NEAR(r.loads[k], load, 1e-9);
    const auto arc = arc_energy(inst.profile(from, to), inst.distance(from, to), t, load,
                                inst.vehicle());
    energy += arc.energy;
    EXPECT_NEAR(r.cumulative_energy[k], energy, 1e-9 * energy);
    t = arc.arrival + (to == inst.end_depot() ? 0.0 : opts.service_time);
    if (to != inst.end_depot()) load -= inst.demand(to);
    from = to;
  }
  EXPECT_NEAR(r.energy, energy, 1e-9 * energy);
  EXPECT_NEAR(r.realtime_energy, energy, 1e-9 * energy);
  EXPECT_NEAR(r.end_time, t, 1e-9);
}

TEST(EvaluateRoute, LoadModelsOrdered) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = generate_instance(6, static_cast<std::uint64_t>(trial));
    std::vector<int> visits{1, 2, 3, 4, 5, 6};
    std::shuffle(visits.begin(), visits.end(), rng);
    EvalOptions nl, il;
    nl.load_model = LoadModel::NoLoad;
    il.load_model = LoadModel::InitialLoad;
    const double w_rt = evaluate_route(visits, inst).energy;
    const double w_nl = evaluate_route(visits, inst, nl).energy;
    const double w_il = evaluate_route(visits, inst, il).energy;
    EXPECT_LE(w_nl, w_rt);
    EXPECT_LE(w_rt, w_il);
  }
}

TEST(EvaluateRoute, Deterministic) {
  const Instance inst = six();
  const Route a = evaluate_route(std::vector<int>{6, 4, 2}, inst);
  const Route b = evaluate_route(std::vector<int>{6, 4, 2}, inst);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_EQ(a.departures, b.departures);
}

TEST(EvaluateRoute, HorizonPropagates) {
  const Instance inst = point_instance({{30, 40}}, {10}, SpeedProfile({0.0}, {1.0}),
                                       testsupport::unit_vehicle(), 1, 60.0);
  EXPECT_THROW(evaluate_route(std::vector<int>{1}, inst), HorizonExceeded);
}

TEST(CheckFeasible, CleanSolution) {
  const Instance inst = six();
  const Solution sol = make_solution({{1, 2, 3}, {4, 5, 6}}, inst);
  const auto rep = check_feasible(sol, inst);
  EXPECT_TRUE(rep.feasible()) << rep.summary();
  EXPECT_EQ(rep.summary(), "feasible");
}

TEST(CheckFeasible, CapacityBoundaryPlusOne) {
  VehicleParams vp = testsupport::unit_vehicle();
  vp.load_capacity = 100.0;
  // route demand 101 = Qe + 1
  const Instance inst = point_instance({{1, 0}, {2, 0}}, {50, 51}, wavy(), vp, 3);
  const Solution sol = make_solution({{1, 2}}, inst);
  const auto rep = check_feasible(sol, inst);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].kind, ViolationKind::Capacity);
  EXPECT_EQ(rep.violations[0].vehicle, 0);
  EXPECT_NE(rep.violations[0].message.find("vehicle 0"), std::string::npos);
  // exactly Qe is fine
  const Instance ok = point_instance({{1, 0}, {2, 0}}, {50, 50}, wavy(), vp, 3);
  EXPECT_TRUE(check_feasible(make_solution({{1, 2}}, ok), ok).feasible());
}

TEST(CheckFeasible, BatteryBelowRouteEnergy) {
  const Instance loose = six();
  const double energy = evaluate_route(std::vector<int>{1, 2, 3, 4, 5, 6}, loose).energy;
  VehicleParams vp = loose.vehicle();
  vp.battery_capacity = energy * 0.99;
  const Instance tight(std::vector<Node>(loose.nodes().begin(), loose.nodes().end()),
                       std::vector<double>(loose.distance_matrix().begin(), loose.distance_matrix().end()),
                       {wavy()}, std::vector<int>(64, 0), vp, 3, loose.horizon());
  const auto rep = check_feasible(make_solution({{1, 2, 3, 4, 5, 6}}, tight), tight);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].kind, ViolationKind::Battery);
}

TEST(CheckFeasible, CoverageAndFleet) {
  const Instance inst = six();
  Solution sol = make_solution({{1, 2}, {3}, {4}, {5, 6}}, inst);
  sol.routes[1].visits.push_back(2);  // duplicate
  sol.routes[2].visits = {4, 9};      // unknown node
  std::vector<std::vector<int>> lists{{1}, {2}, {3}, {4}};  // 5 and 6 missing
  auto rep = check_feasible(sol, inst);
  auto has = [&](const FeasibilityReport& r, ViolationKind k) {
    return std::any_of(r.violations.begin(), r.violations.end(),
                       [&](const Violation& v) { return v.kind == k; });
  };
  EXPECT_TRUE(has(rep, ViolationKind::DuplicateVisit));
  EXPECT_TRUE(has(rep, ViolationKind::UnknownCustomer));
  EXPECT_TRUE(has(rep, ViolationKind::FleetSize));
  rep = check_feasible(make_solution(lists, inst), inst);
  EXPECT_TRUE(has(rep, ViolationKind::MissingCustomer));
}

TEST(CheckFeasible, Horizon) {
  const Instance wide = point_instance({{30, 40}, {1, 1}}, {10, 10}, SpeedProfile({0.0}, {1.0}),
                                       testsupport::unit_vehicle(), 2, 1000.0);
  Solution sol = make_solution({{1}, {2}}, wide);
  const Instance tight = point_instance({{30, 40}, {1, 1}}, {10, 10}, SpeedProfile({0.0}, {1.0}),
                                        testsupport::unit_vehicle(), 2, 60.0);
  const auto rep = check_feasible(sol, tight);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].kind, ViolationKind::Horizon);
  EXPECT_EQ(rep.violations[0].vehicle, 0);
}

TEST(CompareLoadModels, GapFormula) {
  const Instance inst = six();
  EvalOptions nl, il;
  nl.load_model = LoadModel::NoLoad;
  il.load_model = LoadModel::InitialLoad;
  const Solution rt = make_solution({{1, 2, 3}, {4, 5, 6}}, inst);
  const Solution no = make_solution({{3, 2, 1}, {6, 5, 4}}, inst, nl);
  const Solution ini = make_solution({{1, 3, 2}, {4, 6, 5}}, inst, il);
  const EvalReport rep = compare_load_models(rt, no, ini, inst);
  EXPECT_NEAR(rep.W, rt.objective, 1e-9);
  EXPECT_NEAR(rep.W_no_load, no.objective, 1e-9);
  const double ini_rt = make_solution(ini.visit_lists(), inst).objective;
  EXPECT_NEAR(rep.W_ini_load, ini_rt, 1e-9);
  EXPECT_NEAR(rep.G_no_load, (rep.W_no_load / rep.W - 1.0) * 100.0, 1e-12);
  EXPECT_NEAR(rep.G_ini_load, (ini_rt / rep.W - 1.0) * 100.0, 1e-12);
}

TEST(CompareLoadModels, IdenticalRoutesWithoutLoadEffect) {
  // constant speed everywhere: payload never enters the energy
  const Instance inst = point_instance({{1, 2}, {4, 1}, {3, -2}}, {30, 45, 20},
                                       SpeedProfile({0.0}, {0.8}), testsupport::unit_vehicle(), 2);
  const Solution sol = make_solution({{1, 2}, {3}}, inst);
  const EvalReport rep = compare_load_models(sol, sol, sol, inst);
  EXPECT_EQ(rep.G_no_load, 0.0);
  EXPECT_EQ(rep.G_ini_load, 0.0);
}

TEST(CompareLoadModels, CsvLayout) {
  EXPECT_EQ(eval_report_csv_header(), "ins,n,W,W_no_load,G_no_load,G_ini_load");
  EvalReport rep{1000.0, 950.0, 1010.0, -5.0, 1.0};
  EXPECT_EQ(eval_report_csv_row("c30", 30, rep), "c30,30,1000.00000,950.000000,-5.00000000,1.00000000");
}

TEST(SolutionJson, Fields) {
  const Instance inst = six();
  const Solution sol = make_solution({{2, 1}, {5}}, inst);
  const Json doc = solution_to_json(sol);
  ASSERT_EQ(doc["routes"].size(), 2u);
  EXPECT_EQ(doc["routes"][0]["vehicle"], 0);
  EXPECT_EQ(doc["routes"][0]["visits"], Json::array({2, 1}));
  EXPECT_EQ(doc["routes"][0]["departures"].size(), 3u);
  EXPECT_EQ(doc["routes"][0]["loads"].size(), 3u);
  EXPECT_DOUBLE_EQ(doc["objective"].get<double>(), sol.objective);
  EXPECT_EQ(routes_from_json(doc), sol.visit_lists());
  EXPECT_THROW(routes_from_json(Json::object()), ParseError);
}

TEST(LoadModelNames, ParseAndPrint) {
  for (auto m : {LoadModel::RealTime, LoadModel::NoLoad, LoadModel::InitialLoad}) {
    EXPECT_EQ(parse_load_model(load_model_name(m)), m);
  }
  EXPECT_EQ(parse_load_model("no-load"), LoadModel::NoLoad);
  EXPECT_FALSE(parse_load_model("heavy").has_value());
}
