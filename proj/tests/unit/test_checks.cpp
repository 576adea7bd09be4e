#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wxfleet/error.hpp"
#include "wxfleet/report/checks.hpp"

using namespace wxfleet;
using namespace wxfleet::report;

TEST_CASE("rules") {
  CheckList c("s", ToleranceProfile::Default);
  CHECK(c.within_abs("a", 1.04, 1.0, 0.05).passed);
  CHECK_FALSE(c.within_abs("b", 1.06, 1.0, 0.05).passed);
  CHECK(c.within_rel("c", 53.8 * 1.14, 53.8, 0.15).passed);
  CHECK_FALSE(c.within_rel("d", 53.8 * 1.16, 53.8, 0.15).passed);
  CHECK(c.at_most("e", 0.1, 0.1).passed);
  CHECK(c.above("f", 10.5, 10).passed);
  CHECK_FALSE(c.above("g", 10, 10).passed);
  CHECK(c.flag("h", true).passed);
  CHECK_FALSE(c.within_abs("nan", std::nan(""), 1.0, 100).passed);
  CHECK_FALSE(c.above("nan2", std::nan(""), 0).passed);
  CHECK(c.checks().size() == 10u);
  CHECK(c.checks()[0].stage == "s");
}

TEST_CASE("strict profile halves bands only") {
  CheckList c("s", ToleranceProfile::Strict);
  CHECK_FALSE(c.within_abs("a", 1.04, 1.0, 0.05).passed);
  CHECK(c.within_abs("b", 1.02, 1.0, 0.05).passed);
  CHECK(c.above("c", 10.5, 10).passed);
  CHECK(parse_tolerance_profile("strict") == ToleranceProfile::Strict);
  CHECK(parse_tolerance_profile("default") == ToleranceProfile::Default);
  CHECK_THROWS_AS(parse_tolerance_profile("lax"), ValidationError);
}

TEST_CASE("gating") {
  CheckList c("s", ToleranceProfile::Default);
  c.flag("ok", true);
  c.flag("info", false).gating = false;
  CHECK(all_gating_passed(c.checks()));
  c.flag("bad", false);
  CHECK_FALSE(all_gating_passed(c.checks()));

  std::ostringstream out;
  write_checks_csv(c.checks(), out);
  CHECK(out.str().rfind("stage,id,", 0) == 0);
  CHECK(out.str().find("bad") != std::string::npos);
}
