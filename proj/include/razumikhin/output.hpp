#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace raz {

/// Numbers are written with 9 significant digits.
std::string format_number(double x);

using Cell = std::variant<double, std::string>;

/// Machine-readable result of one CLI command. Key/value maps keep
/// insertion order so that output is byte-for-byte reproducible.
struct OutputRecord {
  static constexpr int kSchemaVersion = 1;

  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, Cell>> results;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void input(std::string key, double value);
  void input(std::string key, std::string value);
  void result(std::string key, Cell value);
  void row(std::vector<Cell> cells);
};

/// `#`-prefixed metadata lines (schema_version, command, inputs, results),
/// a header row, then comma-separated rows.
void write_csv(std::ostream& os, const OutputRecord& rec);

void write_json(std::ostream& os, const OutputRecord& rec);

/// Rows of a CSV produced by write_csv, metadata and header skipped.
/// Numeric-looking cells are parsed as doubles.
std::vector<std::vector<Cell>> parse_csv_rows(std::istream& is);

}  // namespace raz
