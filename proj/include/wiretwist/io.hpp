#pragma once

// CSV / JSON serialisation. Numbers are rendered with 12 significant digits
// and dot decimals so CSV and JSON outputs of one run carry identical values.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wiretwist/doe.hpp"
#include "wiretwist/errors.hpp"
#include "wiretwist/torque.hpp"

namespace wiretwist::io {

inline constexpr std::string_view kDoeCsvHeader = "rw_ratio,L_ratio,gamma_rad,x,I_over_r4";

inline std::string format_number(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

/// `v` rounded to the value printed by format_number.
inline double rounded(double v) {
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

inline double parse_number(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw InvalidArgument("not a number: '" + std::string(field) + "'");
  }
  return out;
}

inline void write_doe_csv(std::ostream& os, const DoeTable& table) {
  os << kDoeCsvHeader << '\n';
  for (const auto& row : table.rows) {
    os << format_number(row.rw_ratio) << ',' << format_number(row.L_ratio) << ',' << format_number(row.gamma) << ','
       << format_number(row.x()) << ',' << format_number(row.I_over_r4) << '\n';
  }
}

/// Reads a DoE CSV. The x column is checked against L_ratio - rw_ratio, not stored.
inline DoeTable read_doe_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("empty DoE CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDoeCsvHeader) {
    throw InvalidArgument("unexpected DoE CSV header '" + line + "', expected '" + std::string(kDoeCsvHeader) + "'");
  }
  DoeTable table;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<double> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(parse_number(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 5) {
      throw InvalidArgument("DoE CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                            " fields, expected 5");
    }
    DoeRow row{fields[0], fields[1], fields[2], fields[4]};
    if (std::abs(row.x() - fields[3]) > 1e-9 * (1.0 + std::abs(fields[3]))) {
      throw InvalidArgument("DoE CSV line " + std::to_string(line_no) + ": x does not equal L_ratio - rw_ratio");
    }
    table.rows.push_back(row);
  }
  return table;
}

inline nlohmann::json doe_to_json(const DoeTable& table) {
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"rw_ratio", rounded(row.rw_ratio)},
                    {"L_ratio", rounded(row.L_ratio)},
                    {"gamma_rad", rounded(row.gamma)},
                    {"x", rounded(row.x())},
                    {"I_over_r4", rounded(row.I_over_r4)}});
  }
  return rows;
}

inline void write_torque_csv(std::ostream& os, const TorqueCurve& curve) {
  os << "alpha_rad,T_Nmm\n";
  for (const auto& s : curve.samples) os << format_number(s.alpha) << ',' << format_number(s.torque) << '\n';
}

}  // namespace wiretwist::io
