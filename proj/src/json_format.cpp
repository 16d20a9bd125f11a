#include "aldvrp/json_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace aldvrp {

namespace {

constexpr int kMinSignificant = 9;

int significant_digits(const std::string& text) {
  int count = 0;
  bool leading = true;
  for (char ch : text) {
    if (ch < '0' || ch > '9') continue;
    if (leading && ch == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; matrices get one row per line.
      bool scalar_only = true;
      for (const auto& v : j) scalar_only = scalar_only && v.is_primitive();
      out.push_back('[');
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += (scalar_only && pretty) ? ", " : ",";
        first = false;
        if (!scalar_only) newline(depth + 1);
        dump_into(v, indent, depth + 1, out);
      }
      if (!scalar_only) newline(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float:
      out += format_decimal(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string format_decimal(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot serialize non-finite number");
  }
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  std::string text(buf.data(), end);
  int digits = significant_digits(text);
  if (value == 0.0) digits = 1;
  if (digits >= kMinSignificant) return text;
  if (text.find('.') == std::string::npos) text.push_back('.');
  text.append(static_cast<std::size_t>(kMinSignificant - digits), '0');
  return text;
}

std::string dump_json(const Json& doc, int indent) {
  std::string out;
  dump_into(doc, indent, 0, out);
  return out;
}

}  // namespace aldvrp
