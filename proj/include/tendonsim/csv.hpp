#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tendonsim {

/// Column-oriented result of one experiment. Column names end in a unit
/// suffix, e.g. `d_s_mm` or `K_s_Nmm_per_rad`.
struct Table {
  std::string operation;  // the library call evaluated per row
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Shortest round-trip decimal form of a double (locale independent).
std::string format_number(double value);

/// `# operation: ...` line, header row, then data rows; `,` separated, `\n`
/// line endings.
void write_csv(std::ostream& out, const Table& table);

/// Unit suffixes accepted by the schema check.
const std::vector<std::string>& known_units();
bool has_unit_suffix(const std::string& column);

/// Empty when the file passes; otherwise one message per problem (missing
/// header, unit-less column, ragged row, non-numeric cell).
std::vector<std::string> check_csv_schema(const std::filesystem::path& path);

}  // namespace tendonsim
