#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"

using namespace wxfleet;
using namespace wxfleet::report;

TEST_CASE("number formatting") {
  CHECK(format_number(53.8) == "53.8");
  CHECK(format_number(1234567.0) == "1.23457e+06");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "NA");
  CHECK(format_number(0.000123456789) == "0.000123457");
}

TEST_CASE("escaping and parsing agree") {
  const std::vector<std::string> row{"plain", "a,b", "say \"hi\"", "two\nlines", ""};
  std::ostringstream out;
  write_csv_row(out, {"c1", "c2", "c3", "c4", "c5"});
  write_csv_row(out, row);
  const auto t = parse_csv(out.str());
  REQUIRE(t.rows.size() == 1u);
  CHECK(t.rows[0] == row);
  CHECK(t.column("c3") == 2u);
  CHECK_THROWS_AS(t.column("c9"), SchemaError);
}

TEST_CASE("ragged rows are rejected") {
  CHECK_THROWS_AS(parse_csv("a,b\n1,2\n3\n"), SchemaError);
}

TEST_CASE("numeric cells") {
  CHECK(parse_number("1.5", "x") == 1.5);
  CHECK(std::isnan(parse_number("NA", "x")));
  try {
    parse_number("1.5abc", "revenue_per_min");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("revenue_per_min") != std::string::npos);
  }
}

TEST_CASE("io errors carry the path") {
  const std::filesystem::path p = "/nonexistent_dir_wx/out.csv";
  try {
    write_text_file(p, "x");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(p.string()) != std::string::npos);
  }
  CHECK_THROWS_AS(read_text_file(p), IoError);
}
