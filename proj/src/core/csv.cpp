#include "tendonsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tendonsim {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

void write_csv(std::ostream& out, const Table& table) {
  out << "# operation: " << table.operation << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_number(row[i]);
    }
    out << '\n';
  }
}

const std::vector<std::string>& known_units() {
  static const std::vector<std::string> units = {
      "mm", "m", "N", "N_per_mm", "Nmm", "Nm", "Nmm_per_rad", "Nm_per_rad", "rad",
      "rad_per_s", "rad_per_s2", "s", "W", "mm_per_s", "idx",
  };
  return units;
}

bool has_unit_suffix(const std::string& column) {
  return std::any_of(known_units().begin(), known_units().end(), [&](const std::string& unit) {
    const std::string suffix = "_" + unit;
    return column.size() > suffix.size() &&
           column.compare(column.size() - suffix.size(), suffix.size(), suffix) == 0;
  });
}

std::vector<std::string> check_csv_schema(const std::filesystem::path& path) {
  std::vector<std::string> problems;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    problems.push_back("cannot open " + path.string());
    return problems;
  }
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      problems.push_back("line " + std::to_string(line_no) + ": CRLF line ending");
      line.pop_back();
    }
    if (!header_seen && line.rfind('#', 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      header_seen = true;
      width = cells.size();
      if (width == 0) problems.push_back("empty header row");
      for (const std::string& c : cells) {
        if (!has_unit_suffix(c)) problems.push_back("column '" + c + "' has no unit suffix");
      }
      continue;
    }
    if (cells.size() != width) {
      problems.push_back("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(width) + " cells, got " + std::to_string(cells.size()));
      continue;
    }
    for (const std::string& c : cells) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc{} || ptr != c.data() + c.size()) {
        problems.push_back("line " + std::to_string(line_no) + ": non-numeric cell '" + c + "'");
        break;
      }
    }
  }
  if (!header_seen) problems.push_back("missing header row");
  return problems;
}

}  // namespace tendonsim
