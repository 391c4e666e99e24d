#pragma once
// ResultTable and its CSV form: '#' metadata lines, a header row, then one
// line per row with every real printed to 17 significant digits ('.' decimal
// separator, '\n' line endings). Formatting goes through std::to_chars, so the
// bytes do not depend on the process locale.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace claw::harness {

/// Shortest representation that round-trips.
inline std::string format_shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string format_fixed17(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, end);
}

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
      throw std::logic_error("ResultTable: row width " + std::to_string(row.size()) +
                             " != " + std::to_string(columns.size()) + " columns");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw std::logic_error("ResultTable: non-finite entry");
    }
    rows.push_back(std::move(row));
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c] == name) return c;
    }
    throw std::out_of_range("ResultTable: no column '" + name + "'");
  }
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void emit_csv(const ResultTable& table, std::ostream& sink) {
  for (const auto& [key, value] : table.metadata) {
    std::string v = value;
    for (char& c : v) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    sink << "# " << key << ": " << v << '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) sink << ',';
    sink << csv_field(table.columns[c]);
  }
  sink << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) sink << ',';
      sink << format_fixed17(row[c]);
    }
    sink << '\n';
  }
  sink.flush();
  if (!sink) throw std::runtime_error("emit_csv: write to sink failed");
}

}  // namespace claw::harness
