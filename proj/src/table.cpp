// SPDX-License-Identifier: Apache-2.0
#include "renewal/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace renewal::table {
namespace {

std::string csv_escape(const std::string& s) {
  const bool needs_quotes =
      s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

// Renders one cell; identical digits in both formats so CSV goldens and
// JSON consumers see the same numbers.
std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
  };
  return std::visit(Visitor{}, cell);
}

bool is_string_cell(const Cell& cell) {
  return std::holds_alternative<std::string>(cell);
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) {
    // Keeps JSON valid; tables carry these only in explicitly
    // non-numeric contexts (e.g. an infinite model mean).
    return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

OutputTable::OutputTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) {
    throw std::invalid_argument("OutputTable: need at least one column");
  }
}

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("OutputTable::add_row: expected " +
                                std::to_string(columns_.size()) +
                                " cells, got " + std::to_string(row.size()));
  }
  rows_.push_back(std::move(row));
}

std::string OutputTable::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(columns_[c]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_escape(cell_text(row[c]));
    }
    out += '\n';
  }
  return out;
}

std::string OutputTable::to_json() const {
  // Array of row objects, emitted directly so numeric tokens match the CSV
  // rendering digit for digit; nlohmann handles string escaping only.
  std::string out = "[";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out += r == 0 ? "\n" : ",\n";
    out += "  {";
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out += ", ";
      out += nlohmann::json(columns_[c]).dump();
      out += ": ";
      const Cell& cell = rows_[r][c];
      const std::string text = cell_text(cell);
      if (is_string_cell(cell) || text == "nan" || text == "inf" ||
          text == "-inf") {
        out += nlohmann::json(text).dump();
      } else {
        out += text;
      }
    }
    out += '}';
  }
  out += rows_.empty() ? "]\n" : "\n]\n";
  return out;
}

std::string OutputTable::render(Format format) const {
  switch (format) {
    case Format::csv:
      return to_csv();
    case Format::json:
      return to_json();
  }
  throw std::logic_error("OutputTable::render: unknown format");
}

}  // namespace renewal::table
