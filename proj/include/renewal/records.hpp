// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "renewal/stats.hpp"

namespace renewal::records {

/// Event years with optional labels, e.g. historical outbreak dates.
/// origin_year anchors the conversion to model time (year 1700 maps to
/// time 0 under the default).
struct HistoricalRecord {
  double origin_year = 1700.0;
  std::vector<double> years;        // strictly increasing
  std::vector<std::string> labels;  // same length as years; may hold ""
};

/// Parse failure with 1-based location information.
struct ParseError {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string reason;

  std::string to_string() const;
};

/// Parses CSV text with the exact header `year,label`.  Blank lines and
/// lines starting with '#' are skipped.  Years must parse as finite numbers
/// and be strictly increasing.  On failure returns false and fills `error`.
bool parse_records(const std::string& text, HistoricalRecord& out,
                   ParseError& error);

/// Inverse of parse_records; emits the `year,label` header and one row per
/// event with '\n' line endings.
std::string serialize_records(const HistoricalRecord& record);

/// Consecutive gaps between event years, for estimation.
stats::InterarrivalSample to_sample(const HistoricalRecord& record);

}  // namespace renewal::records
