// SPDX-License-Identifier: Apache-2.0
#include "renewal/records.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace renewal::records {
namespace {

constexpr const char* kHeader = "year,label";

bool fail(ParseError& error, std::size_t line, std::size_t column,
          std::string reason) {
  error.line = line;
  error.column = column;
  error.reason = std::move(reason);
  return false;
}

// Trailing '\r' tolerated so CRLF files parse; everything else is strict.
std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

bool is_blank(const std::string& s) {
  for (char c : s) {
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

}  // namespace

std::string ParseError::to_string() const {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << reason;
  return os.str();
}

bool parse_records(const std::string& text, HistoricalRecord& out,
                   ParseError& error) {
  HistoricalRecord record;
  std::istringstream input(text);
  std::string raw;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(input, raw)) {
    ++line_no;
    const std::string line = strip_cr(raw);
    if (is_blank(line) || line[0] == '#') continue;
    if (!saw_header) {
      if (line != kHeader) {
        return fail(error, line_no, 1,
                    "expected header \"" + std::string(kHeader) + "\", got \"" +
                        line + "\"");
      }
      saw_header = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      return fail(error, line_no, line.size() + 1,
                  "expected \"year,label\" row; no comma found");
    }
    const std::string year_field = line.substr(0, comma);
    if (year_field.empty()) {
      return fail(error, line_no, 1, "empty year field");
    }
    errno = 0;
    char* end = nullptr;
    const double year = std::strtod(year_field.c_str(), &end);
    if (end != year_field.c_str() + year_field.size() || errno == ERANGE ||
        !std::isfinite(year)) {
      return fail(error, line_no, 1,
                  "year \"" + year_field + "\" is not a finite number");
    }
    if (!record.years.empty() && !(year > record.years.back())) {
      return fail(error, line_no, 1,
                  "years must be strictly increasing; " + year_field +
                      " does not exceed the previous entry");
    }
    record.years.push_back(year);
    record.labels.push_back(line.substr(comma + 1));
  }
  if (!saw_header) {
    return fail(error, line_no, 1, "missing \"year,label\" header");
  }
  out = std::move(record);
  return true;
}

std::string serialize_records(const HistoricalRecord& record) {
  std::ostringstream os;
  os << kHeader << "\n";
  for (std::size_t i = 0; i < record.years.size(); ++i) {
    const double year = record.years[i];
    // Years are calendar integers in practice; print them without decimals
    // when exact, with full precision otherwise.
    if (year == static_cast<double>(static_cast<long long>(year))) {
      os << static_cast<long long>(year);
    } else {
      os.precision(12);
      os << year;
    }
    os << ',' << (i < record.labels.size() ? record.labels[i] : "") << "\n";
  }
  return os.str();
}

stats::InterarrivalSample to_sample(const HistoricalRecord& record) {
  return stats::intervals_from_years(record.years);
}

}  // namespace renewal::records
