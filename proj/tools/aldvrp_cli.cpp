// aldvrp command-line tool: generate | solve | evaluate | compare | oracle
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "aldvrp/errors.hpp"
#include "aldvrp/oracle.hpp"
#include "aldvrp/search.hpp"

namespace fs = std::filesystem;
using namespace aldvrp;

namespace {

enum Exit { kOk = 0, kUsage = 2, kInfeasible = 3, kInternal = 4 };

enum class Level { Error, Warn, Info, Debug };

Level log_level() {
  const char* env = std::getenv("ALDVRP_LOG");
  const std::string s = env ? env : "";
  if (s == "debug") return Level::Debug;
  if (s == "info") return Level::Info;
  if (s == "error") return Level::Error;
  return Level::Warn;
}

void info(const std::string& msg) {
  if (log_level() >= Level::Info) std::cerr << msg << '\n';
}

struct UsageError : Error {
  using Error::Error;
};

Budget parse_budget(const std::string& s) {
  try {
    std::size_t used = 0;
    if (!s.empty() && s.back() == 's') {
      const double secs = std::stod(s.substr(0, s.size() - 1), &used);
      if (used + 1 == s.size() && secs >= 0.0) return Budget::secs(secs);
    } else {
      const long iters = std::stol(s, &used);
      if (used == s.size() && iters >= 0) return Budget::iters(iters);
    }
  } catch (const std::exception&) {
  }
  throw UsageError("bad --budget '" + s + "': expected N (iterations) or Ns (seconds)");
}

// "minlp-approx" is the real-time load model under the approximate energy mode.
void apply_load_model(const std::string& name, EvalOptions& eval) {
  if (name == "minlp-approx" || name == "minlp_approx") {
    eval.load_model = LoadModel::RealTime;
    eval.energy_mode = EnergyMode::MinlpApprox;
    return;
  }
  const auto model = parse_load_model(name);
  if (!model) throw UsageError("unknown --load-model '" + name + "'");
  eval.load_model = *model;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

SearchConfig load_config(const std::string& path) {
  return path.empty() ? SearchConfig{} : search_config_from_json(read_json(path));
}

int report_infeasible(const Solution& sol, const Instance& inst, double service) {
  const auto report = check_feasible(sol, inst, service);
  if (report.feasible()) return kOk;
  std::cerr << "infeasible solution:\n" << report.summary() << '\n';
  return kInfeasible;
}

struct Common {
  std::string instance;
  std::string out;
  std::string config;
  std::string budget = "1000";
  std::string load_model = "realtime";
  std::uint64_t seed = 1;
  int workers = 1;
};

Solution run_solver(const Instance& inst, SearchConfig cfg, const Common& o, std::ostream* log) {
  const Budget budget = parse_budget(o.budget);
  if (log && cfg.log_every == 0) cfg.log_every = 100;
  const SolveResult res = solve(inst, cfg, o.seed, budget, o.workers, log);
  std::ostringstream msg;
  msg << "iterations=" << res.iterations << " lns_best=" << format_decimal(res.lns_best.objective)
      << " best=" << format_decimal(res.best.objective) << " pool=" << res.pool.size()
      << " spp=" << spp_status_name(res.spp_status);
  info(msg.str());
  return res.best;
}

int cmd_generate(int n, std::uint64_t seed, const std::string& out) {
  write_text(out, instance_to_string(generate_instance(n, seed)));
  return kOk;
}

int cmd_solve(const Common& o) {
  const Instance inst = load_instance(o.instance);
  SearchConfig cfg = load_config(o.config);
  apply_load_model(o.load_model, cfg.eval);
  std::ostream* log = log_level() >= Level::Debug ? &std::cerr : nullptr;
  const Solution best = run_solver(inst, cfg, o, log);
  write_text(o.out, dump_json(solution_to_json(best)) + "\n");
  return report_infeasible(best, inst, cfg.eval.service_time);
}

int cmd_evaluate(const Common& o, const std::string& solution_path) {
  const Instance inst = load_instance(o.instance);
  SearchConfig cfg = load_config(o.config);
  apply_load_model(o.load_model, cfg.eval);
  const auto routes = routes_from_json(read_json(solution_path));
  // Capacity and battery trouble is reported below; only the horizon stops
  // the schedule from being built.
  const Solution sol = make_solution(routes, inst, cfg.eval);
  const auto report = check_feasible(sol, inst, cfg.eval.service_time);
  Json doc = solution_to_json(sol);
  doc["feasible"] = report.feasible();
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"kind", std::string(violation_name(v.kind))},
                          {"vehicle", v.vehicle},
                          {"customer", v.customer},
                          {"message", v.message}});
  }
  doc["violations"] = violations;
  write_text(o.out, dump_json(doc) + "\n");
  if (!report.feasible()) {
    std::cerr << report.summary() << '\n';
    return kInfeasible;
  }
  return kOk;
}

int cmd_compare(const Common& o, std::string name) {
  const Instance inst = load_instance(o.instance);
  const SearchConfig base = load_config(o.config);
  if (name.empty()) name = fs::path(o.instance).stem().string();

  auto run = [&](LoadModel model) {
    SearchConfig cfg = base;
    cfg.eval.load_model = model;
    info(std::string("solving with load model ") + std::string(load_model_name(model)));
    return run_solver(inst, cfg, o, nullptr);
  };
  const Solution rt = run(LoadModel::RealTime);
  const Solution nl = run(LoadModel::NoLoad);
  const Solution il = run(LoadModel::InitialLoad);
  const EvalReport rep = compare_load_models(rt, nl, il, inst, base.eval.service_time);
  const std::string row = eval_report_csv_row(name, inst.customer_count(), rep) + "\n";

  if (o.out.empty() || o.out == "-") {
    std::cout << eval_report_csv_header() << '\n' << row;
    return kOk;
  }
  const bool fresh = !fs::exists(o.out) || fs::file_size(o.out) == 0;
  std::ofstream out(o.out, std::ios::app);
  if (!out) throw UsageError("cannot write " + o.out);
  if (fresh) out << eval_report_csv_header() << '\n';
  out << row;
  return kOk;
}

int cmd_oracle(const Common& o, int max_n) {
  const Instance inst = load_instance(o.instance);
  OracleOptions opts;
  opts.max_customers = max_n;
  apply_load_model(o.load_model, opts.eval);
  const Solution best = exact_solve(inst, opts);
  write_text(o.out, dump_json(solution_to_json(best)) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-minimizing electric vehicle routing under time-dependent speeds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "aldvrp 0.1.0");

  Common o;
  int n = 0;
  int max_n = 10;
  std::string solution_path;
  std::string name;

  auto* gen = app.add_subcommand("generate", "Write a synthetic instance");
  gen->add_option("--n", n, "Number of customers")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--out", o.out, "Output file (default stdout)");

  auto instance_opt = [&](CLI::App* sub) {
    sub->add_option("--instance", o.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output file (default stdout)");
  };
  auto search_opts = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Search config JSON")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--budget", o.budget, "Iterations (N) or seconds (Ns)");
    sub->add_option("--workers", o.workers, "Parallel LNS workers")->check(CLI::PositiveNumber);
  };
  auto load_opt = [&](CLI::App* sub) {
    sub->add_option("--load-model", o.load_model, "realtime | noload | iniload | minlp-approx");
  };

  auto* solve_cmd = app.add_subcommand("solve", "Run LNS with set partitioning");
  instance_opt(solve_cmd);
  search_opts(solve_cmd);
  load_opt(solve_cmd);

  auto* eval_cmd = app.add_subcommand("evaluate", "Recompute schedule, energy and feasibility");
  instance_opt(eval_cmd);
  eval_cmd->add_option("--solution", solution_path, "Solution JSON")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--config", o.config, "Search config JSON (evaluation settings)")
      ->check(CLI::ExistingFile);
  load_opt(eval_cmd);

  auto* cmp = app.add_subcommand("compare", "Solve under all three load models, append a CSV row");
  instance_opt(cmp);
  search_opts(cmp);
  cmp->add_option("--name", name, "Instance label (default: file stem)");

  auto* orc = app.add_subcommand("oracle", "Exhaustive optimum of a small instance");
  instance_opt(orc);
  load_opt(orc);
  orc->add_option("--max-n", max_n, "Refuse instances with more customers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(n, o.seed, o.out);
    if (solve_cmd->parsed()) return cmd_solve(o);
    if (eval_cmd->parsed()) return cmd_evaluate(o, solution_path);
    if (cmp->parsed()) return cmd_compare(o, name);
    if (orc->parsed()) return cmd_oracle(o, max_n);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const HorizonExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
