#ifndef MIMONOMA_TABLE_HPP
#define MIMONOMA_TABLE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mimonoma {

using Cell = std::variant<double, std::uint64_t, std::string>;

/// Column-named result table produced by the experiments.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Index of a column; throws Error(kInvalidArgument) if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;

  /// Numeric value (double or integer cell) at (row, column name).
  double number(std::size_t row, std::string_view name) const;

  void add_row(std::vector<Cell> row);

  friend bool operator==(const Table&, const Table&) = default;
};

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_format(std::string_view name);

/// Header row of column names, then one line per row. Doubles use 12
/// significant digits.
void write_csv(const Table& table, std::ostream& out);

/// JSON array of objects keyed by column name, columns in table order.
std::string to_json(const Table& table);
Table from_json(std::string_view text);

/// Writes the table to `path` and a matplotlib script next to it
/// (`<path>.plot.py`) that plots every r1/r2/sum column against
/// sweep_value. Returns the script path. Throws Error(kIo) on write
/// failure and Error(kInvalidArgument) on an empty table.
std::filesystem::path emit_output(const Table& table, OutputFormat format,
                                  const std::filesystem::path& path);

}  // namespace mimonoma

#endif  // MIMONOMA_TABLE_HPP
