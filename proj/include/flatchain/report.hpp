#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "flatchain/rational.hpp"

namespace flatchain::report {

/// Reals print with 12 significant digits, rationals as "p/q".
using Cell = std::variant<std::string, double, Rational, std::int64_t, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Header notes such as the seed; CSV writes them as leading "# k=v" lines.
  std::vector<std::pair<std::string, std::string>> meta;

  void add_row(std::vector<Cell> row);
};

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

std::string format_real(double x);
std::string format_cell(const Cell& c);

std::string to_csv(const Table& t);
/// {"meta": {...}, "records": [{column: value, ...}]} with columns in
/// declaration order.
std::string to_json(const Table& t);
std::string render(const Table& t, Format f);

/// Writes `content` to `path`; throws InputError when it cannot.
void write_file(const std::string& path, const std::string& content);

}  // namespace flatchain::report
