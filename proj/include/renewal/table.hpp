// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace renewal::table {

enum class Format { csv, json };

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t>;

/// Rectangular output table rendered as CSV or as a JSON array of objects.
/// Doubles print with 12 significant digits in both formats so the two
/// renderings carry identical numbers and golden files stay stable.
class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns);

  /// Appends a row; must match the column count.
  void add_row(std::vector<Cell> row);

  std::string render(Format format) const;
  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// 12-significant-digit rendering used for doubles in tables.
std::string format_number(double value);

}  // namespace renewal::table
