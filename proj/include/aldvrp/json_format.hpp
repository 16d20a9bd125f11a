#pragma once

#include <string>

#include "json.hpp"

namespace aldvrp {

using Json = nlohmann::ordered_json;

/// Plain decimal rendering (never scientific notation) that round-trips
/// exactly and carries at least nine significant digits.
std::string format_decimal(double value);

/// Serializes `doc` with every floating-point number passed through
/// format_decimal. `indent < 0` produces a single line.
std::string dump_json(const Json& doc, int indent = 2);

}  // namespace aldvrp
