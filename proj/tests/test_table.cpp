// SPDX-License-Identifier: Apache-2.0
#include "renewal/table.hpp"

#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"

using namespace renewal;
using table::Cell;

TEST_CASE("numbers render with 12 significant digits") {
  CHECK(table::format_number(0.5) == "0.5");
  CHECK(table::format_number(10.0) == "10");
  CHECK(table::format_number(0.1251100357211333) == "0.125110035721");
  CHECK(table::format_number(0.1353352832366127) == "0.135335283237");
  CHECK(table::format_number(4.53999297625e-05) == "4.53999297625e-05");
  CHECK(table::format_number(-2.0) == "-2");
}

TEST_CASE("csv rendering with minimal quoting") {
  table::OutputTable t({"name", "value"});
  t.add_row({std::string("plain"), 0.5});
  t.add_row({std::string("with,comma"), std::int64_t{-3}});
  t.add_row({std::string("say \"hi\""), std::uint64_t{7}});
  CHECK(t.to_csv() ==
        "name,value\n"
        "plain,0.5\n"
        "\"with,comma\",-3\n"
        "\"say \"\"hi\"\"\",7\n");
}

TEST_CASE("json rendering mirrors the csv numbers") {
  table::OutputTable t({"k", "mass"});
  t.add_row({std::int64_t{10}, 0.1251100357211333});
  const std::string text = t.to_json();
  CHECK(text.find("0.125110035721") != std::string::npos);

  const auto parsed = nlohmann::json::parse(text);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["k"] == 10);
  CHECK(parsed[0]["mass"].get<double>() ==
        doctest::Approx(0.125110035721).epsilon(1e-12));
}

TEST_CASE("json strings are escaped") {
  table::OutputTable t({"label"});
  t.add_row({std::string("quote \" backslash \\ newline \n done")});
  const auto parsed = nlohmann::json::parse(t.to_json());
  CHECK(parsed[0]["label"] == "quote \" backslash \\ newline \n done");
}

TEST_CASE("empty table renders header only") {
  table::OutputTable t({"a", "b"});
  CHECK(t.to_csv() == "a,b\n");
  CHECK(t.to_json() == "[]\n");
}

TEST_CASE("rectangularity is enforced") {
  table::OutputTable t({"a", "b"});
  CHECK_THROWS_AS(t.add_row({std::string("only one")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(table::OutputTable({}), std::invalid_argument);
}

TEST_CASE("rendering is deterministic") {
  table::OutputTable t({"x"});
  t.add_row({0.1});
  CHECK(t.render(table::Format::csv) == t.render(table::Format::csv));
  CHECK(t.render(table::Format::json) == t.render(table::Format::json));
}
