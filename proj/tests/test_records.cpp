// SPDX-License-Identifier: Apache-2.0
#include "renewal/records.hpp"

#include <string>
#include <vector>

#include "doctest.h"

using namespace renewal;

TEST_CASE("parses a well-formed file") {
  const std::string text =
      "# comment line\n"
      "\n"
      "year,label\n"
      "1889,Russian flu\n"
      "1918,Spanish flu\n"
      "1957,\n";
  records::HistoricalRecord record;
  records::ParseError error;
  REQUIRE(records::parse_records(text, record, error));
  CHECK(record.years == std::vector<double>{1889, 1918, 1957});
  REQUIRE(record.labels.size() == 3);
  CHECK(record.labels[0] == "Russian flu");
  CHECK(record.labels[2] == "");
  CHECK(record.origin_year == 1700.0);
}

TEST_CASE("serialization round-trips canonical text") {
  const std::string text =
      "year,label\n"
      "1889,Russian flu\n"
      "1918,Spanish flu\n";
  records::HistoricalRecord record;
  records::ParseError error;
  REQUIRE(records::parse_records(text, record, error));
  CHECK(records::serialize_records(record) == text);
}

TEST_CASE("tolerates CRLF line endings") {
  records::HistoricalRecord record;
  records::ParseError error;
  REQUIRE(records::parse_records("year,label\r\n1889,x\r\n1918,y\r\n", record,
                                 error));
  CHECK(record.years == std::vector<double>{1889, 1918});
}

TEST_CASE("rejects a wrong header with its location") {
  records::HistoricalRecord record;
  records::ParseError error;
  CHECK_FALSE(records::parse_records("years,label\n1889,x\n", record, error));
  CHECK(error.line == 1);
  CHECK(error.reason.find("year,label") != std::string::npos);

  CHECK_FALSE(records::parse_records("", record, error));
  CHECK_FALSE(records::parse_records("# only a comment\n", record, error));
}

TEST_CASE("rejects malformed rows with 1-based line numbers") {
  records::HistoricalRecord record;
  records::ParseError error;

  CHECK_FALSE(
      records::parse_records("year,label\n1889 x\n", record, error));
  CHECK(error.line == 2);
  CHECK(error.reason.find("comma") != std::string::npos);

  CHECK_FALSE(
      records::parse_records("year,label\nabc,x\n", record, error));
  CHECK(error.line == 2);
  CHECK(error.reason.find("not a finite number") != std::string::npos);

  CHECK_FALSE(records::parse_records("year,label\n1918,x\n1889,y\n", record,
                                     error));
  CHECK(error.line == 3);
  CHECK(error.reason.find("strictly increasing") != std::string::npos);

  CHECK_FALSE(records::parse_records("year,label\n,x\n", record, error));
  CHECK(error.line == 2);

  CHECK(error.to_string().find("line 2") != std::string::npos);
}

TEST_CASE("to_sample produces consecutive gaps") {
  records::HistoricalRecord record;
  records::ParseError error;
  REQUIRE(records::parse_records("year,label\n1700,a\n1730,b\n1790,c\n",
                                 record, error));
  const auto sample = records::to_sample(record);
  CHECK(sample.gaps == std::vector<double>{30, 60});
}
