#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>

#include "aldvrp/energy.hpp"
#include "aldvrp/errors.hpp"
#include "aldvrp/evaluate.hpp"
#include "aldvrp/oracle.hpp"
#include "aldvrp/search.hpp"
#include "aldvrp/split.hpp"
#include "aldvrp/timetravel.hpp"

namespace py = pybind11;
using namespace aldvrp;

namespace {

LoadModel to_model(const std::string& name) {
  const auto m = parse_load_model(name);
  if (!m) throw ValidationError("unknown load model '" + name + "'");
  return *m;
}

EvalOptions eval_options(const std::string& load_model, const std::string& energy_mode,
                         double service_time) {
  EvalOptions o;
  o.load_model = to_model(load_model);
  if (energy_mode == "exact") {
    o.energy_mode = EnergyMode::Exact;
  } else if (energy_mode == "minlp-approx") {
    o.energy_mode = EnergyMode::MinlpApprox;
  } else {
    throw ValidationError("unknown energy mode '" + energy_mode + "'");
  }
  o.service_time = service_time;
  return o;
}

Budget make_budget(std::optional<long> iterations, std::optional<double> seconds) {
  if (!iterations && !seconds) return Budget::iters(1000);
  return {iterations, seconds};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the aldvrp package";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<HorizonExceeded>(m, "HorizonExceeded", PyExc_RuntimeError);

  py::class_<SpeedProfile>(m, "SpeedProfile")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("breakpoints"),
           py::arg("speeds"))
      .def_property_readonly("breakpoints", [](const SpeedProfile& p) {
        return std::vector<double>(p.breakpoints().begin(), p.breakpoints().end());
      })
      .def_property_readonly("speeds", [](const SpeedProfile& p) {
        return std::vector<double>(p.speeds().begin(), p.speeds().end());
      })
      .def("speed_at", &SpeedProfile::speed_at, py::arg("t"));

  py::class_<VehicleParams>(m, "VehicleParams")
      .def(py::init<>())
      .def_readwrite("mass", &VehicleParams::mass)
      .def_readwrite("load_capacity", &VehicleParams::load_capacity)
      .def_readwrite("battery_capacity", &VehicleParams::battery_capacity)
      .def_readwrite("coeff_r", &VehicleParams::coeff_r)
      .def_readwrite("coeff_s", &VehicleParams::coeff_s)
      .def_readwrite("coeff_c", &VehicleParams::coeff_c)
      .def_readwrite("gamma", &VehicleParams::gamma);

  py::class_<Instance>(m, "Instance")
      .def_static("from_json", [](const std::string& text) {
        return instance_from_json(Json::parse(text));
      })
      .def("to_json", &instance_to_string)
      .def("save", [](const Instance& inst, const std::filesystem::path& p) { save_instance(inst, p); })
      .def_property_readonly("customer_count", &Instance::customer_count)
      .def_property_readonly("fleet_size", &Instance::fleet_size)
      .def_property_readonly("horizon", &Instance::horizon)
      .def_property_readonly("vehicle", &Instance::vehicle)
      .def("distance", &Instance::distance, py::arg("i"), py::arg("j"))
      .def("demand", &Instance::demand, py::arg("i"))
      .def("profile", &Instance::profile, py::arg("i"), py::arg("j"),
           py::return_value_policy::copy);

  m.def("load_instance", [](const std::filesystem::path& p) { return load_instance(p); },
        py::arg("path"));
  m.def(
      "generate_instance",
      [](int n, std::uint64_t seed) { return generate_instance(n, seed); }, py::arg("n"),
      py::arg("seed") = 1);

  py::class_<ArcEnergy>(m, "ArcEnergy")
      .def_readonly("energy", &ArcEnergy::energy)
      .def_readonly("arrival", &ArcEnergy::arrival)
      .def("__repr__", [](const ArcEnergy& a) {
        return "ArcEnergy(energy=" + std::to_string(a.energy) + ", arrival=" +
               std::to_string(a.arrival) + ")";
      });

  m.def(
      "arrival_time",
      [](const SpeedProfile& p, double d, double depart, double horizon) {
        return arrival_time(p, d, depart, horizon);
      },
      py::arg("profile"), py::arg("distance"), py::arg("depart"), py::arg("horizon") = kNoHorizon);
  m.def(
      "arc_energy",
      [](const SpeedProfile& p, double d, double depart, double load, const VehicleParams& v) {
        return arc_energy(p, d, depart, load, v);
      },
      py::arg("profile"), py::arg("distance"), py::arg("depart"), py::arg("load"),
      py::arg("vehicle") = VehicleParams{});

  py::class_<Route>(m, "Route")
      .def_readonly("vehicle", &Route::vehicle)
      .def_readonly("visits", &Route::visits)
      .def_readonly("departures", &Route::departures)
      .def_readonly("loads", &Route::loads)
      .def_readonly("energy", &Route::energy)
      .def_readonly("realtime_energy", &Route::realtime_energy)
      .def_readonly("demand", &Route::demand)
      .def_readonly("end_time", &Route::end_time);

  py::class_<Solution>(m, "Solution")
      .def_readonly("routes", &Solution::routes)
      .def_readonly("objective", &Solution::objective)
      .def_property_readonly("load_model",
                             [](const Solution& s) { return std::string(load_model_name(s.load_model)); })
      .def("visit_lists", &Solution::visit_lists)
      .def("to_json", [](const Solution& s) { return dump_json(solution_to_json(s)); });

  m.def(
      "evaluate_route",
      [](const std::vector<int>& visits, const Instance& inst, const std::string& load_model,
         const std::string& energy_mode, double service_time) {
        return evaluate_route(visits, inst, eval_options(load_model, energy_mode, service_time));
      },
      py::arg("visits"), py::arg("instance"), py::arg("load_model") = "realtime",
      py::arg("energy_mode") = "exact", py::arg("service_time") = 0.0);

  m.def(
      "check_feasible",
      [](const std::vector<std::vector<int>>& routes, const Instance& inst) {
        const FeasibilityReport rep = check_feasible(make_solution(routes, inst), inst);
        std::vector<std::string> messages;
        for (const Violation& v : rep.violations) messages.push_back(v.message);
        return messages;
      },
      py::arg("routes"), py::arg("instance"),
      "Violated constraints as messages; empty when the routes are feasible.");

  m.def(
      "split",
      [](const std::vector<int>& tour, const Instance& inst, const std::string& load_model) {
        return split(tour, inst, eval_options(load_model, "exact", 0.0));
      },
      py::arg("tour"), py::arg("instance"), py::arg("load_model") = "realtime");

  m.def(
      "solve",
      [](const Instance& inst, std::uint64_t seed, std::optional<long> iterations,
         std::optional<double> seconds, int workers, const std::string& load_model,
         std::optional<std::string> config) {
        SearchConfig cfg = config ? search_config_from_json(Json::parse(*config)) : SearchConfig{};
        if (!config || load_model != "realtime") cfg.eval.load_model = to_model(load_model);
        const Budget budget = make_budget(iterations, seconds);
        py::gil_scoped_release release;
        return solve(inst, cfg, seed, budget, workers).best;
      },
      py::arg("instance"), py::arg("seed") = 1, py::arg("iterations") = py::none(),
      py::arg("seconds") = py::none(), py::arg("workers") = 1, py::arg("load_model") = "realtime",
      py::arg("config") = py::none(),
      "LNS with local search and set partitioning; 1000 iterations unless a budget is given.");

  m.def(
      "exact_solve",
      [](const Instance& inst, const std::string& load_model, int max_customers) {
        OracleOptions o;
        o.max_customers = max_customers;
        o.eval.load_model = to_model(load_model);
        py::gil_scoped_release release;
        return exact_solve(inst, o);
      },
      py::arg("instance"), py::arg("load_model") = "realtime", py::arg("max_customers") = 10);

  m.def(
      "compare_load_models",
      [](const Instance& inst, std::uint64_t seed, long iterations) {
        Solution sols[3];
        {
          py::gil_scoped_release release;
          const LoadModel models[] = {LoadModel::RealTime, LoadModel::NoLoad, LoadModel::InitialLoad};
          for (int k = 0; k < 3; ++k) {
            SearchConfig cfg;
            cfg.eval.load_model = models[k];
            sols[k] = solve(inst, cfg, seed, Budget::iters(iterations)).best;
          }
        }
        const EvalReport r = compare_load_models(sols[0], sols[1], sols[2], inst);
        py::dict out;
        out["W"] = r.W;
        out["W_no_load"] = r.W_no_load;
        out["W_ini_load"] = r.W_ini_load;
        out["G_no_load"] = r.G_no_load;
        out["G_ini_load"] = r.G_ini_load;
        return out;
      },
      py::arg("instance"), py::arg("seed") = 1, py::arg("iterations") = 1000);
}
