#include <algorithm>
#include <iterator>
#include <string>

#include "aldvrp/errors.hpp"
#include "aldvrp/search.hpp"

namespace aldvrp {

namespace {

const char* energy_mode_key(EnergyMode mode) {
  return mode == EnergyMode::Exact ? "exact" : "minlp-approx";
}

EnergyMode parse_energy_mode(const std::string& s) {
  if (s == "exact") return EnergyMode::Exact;
  if (s == "minlp-approx" || s == "minlp_approx") return EnergyMode::MinlpApprox;
  throw ParseError("config: unknown energy_mode '" + s + "'");
}

template <class T>
void read(const Json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ParseError(std::string("config: bad value for '") + key + "'");
  }
}

}  // namespace

Json search_config_to_json(const SearchConfig& c) {
  Json doc;
  doc["load_model"] = std::string(load_model_name(c.eval.load_model));
  doc["energy_mode"] = energy_mode_key(c.eval.energy_mode);
  doc["service_time"] = c.eval.service_time;
  doc["rho_min"] = c.rho_min;
  doc["rho_max"] = c.rho_max;
  doc["removal_bias"] = c.removal_bias;
  doc["shaw_bias"] = c.shaw_bias;
  doc["shaw_weight_distance"] = c.shaw_weight_distance;
  doc["shaw_weight_demand"] = c.shaw_weight_demand;
  doc["regret_depths"] = c.regret_depths;
  doc["sa_worse_fraction"] = c.sa_worse_fraction;
  doc["sa_accept_probability"] = c.sa_accept_probability;
  doc["cooling"] = c.cooling;
  doc["scores"] = c.scores;
  doc["pool_threshold"] = c.pool_threshold;
  doc["spp_time_limit"] = c.spp_time_limit;
  doc["max_route_length"] = c.max_route_length;
  doc["granular_neighbors"] = c.granular_neighbors;
  doc["log_every"] = c.log_every;
  return doc;
}

SearchConfig search_config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("config: expected an object");
  static const char* known[] = {
      "load_model", "energy_mode", "service_time", "rho_min", "rho_max", "removal_bias",
      "shaw_bias", "shaw_weight_distance", "shaw_weight_demand", "regret_depths",
      "sa_worse_fraction", "sa_accept_probability", "cooling", "scores", "pool_threshold",
      "spp_time_limit", "max_route_length", "granular_neighbors", "log_every"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ParseError("config: unknown key '" + key + "'");
    }
  }

  SearchConfig c;
  if (doc.contains("load_model")) {
    std::string name;
    read(doc, "load_model", name);
    const auto model = parse_load_model(name);
    if (!model) throw ParseError("config: unknown load_model '" + name + "'");
    c.eval.load_model = *model;
  }
  if (doc.contains("energy_mode")) {
    std::string name;
    read(doc, "energy_mode", name);
    c.eval.energy_mode = parse_energy_mode(name);
  }
  read(doc, "service_time", c.eval.service_time);
  read(doc, "rho_min", c.rho_min);
  read(doc, "rho_max", c.rho_max);
  read(doc, "removal_bias", c.removal_bias);
  read(doc, "shaw_bias", c.shaw_bias);
  read(doc, "shaw_weight_distance", c.shaw_weight_distance);
  read(doc, "shaw_weight_demand", c.shaw_weight_demand);
  read(doc, "regret_depths", c.regret_depths);
  read(doc, "sa_worse_fraction", c.sa_worse_fraction);
  read(doc, "sa_accept_probability", c.sa_accept_probability);
  read(doc, "cooling", c.cooling);
  read(doc, "scores", c.scores);
  read(doc, "pool_threshold", c.pool_threshold);
  read(doc, "spp_time_limit", c.spp_time_limit);
  read(doc, "max_route_length", c.max_route_length);
  read(doc, "granular_neighbors", c.granular_neighbors);
  read(doc, "log_every", c.log_every);

  if (!(c.rho_min > 0.0 && c.rho_min <= c.rho_max && c.rho_max < 1.0)) {
    throw ValidationError("config: need 0 < rho_min <= rho_max < 1");
  }
  if (c.regret_depths.empty()) c.regret_depths = {2};
  return c;
}

}  // namespace aldvrp
