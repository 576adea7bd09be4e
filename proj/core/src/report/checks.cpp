#include "wxfleet/report/checks.hpp"

#include <cmath>
#include <ostream>

#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"

namespace wxfleet::report {

ToleranceProfile parse_tolerance_profile(std::string_view text) {
  if (text == "default") return ToleranceProfile::Default;
  if (text == "strict") return ToleranceProfile::Strict;
  throw ValidationError("tolerance-profile", "expected 'default' or 'strict', got '" + std::string(text) + "'");
}

std::string_view to_string(ToleranceProfile profile) {
  return profile == ToleranceProfile::Strict ? "strict" : "default";
}

Check& CheckList::push(Check c) {
  c.stage = stage_;
  if (std::isnan(c.value)) {
    c.passed = false;
    if (c.detail.empty()) c.detail = "not computed";
  }
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& CheckList::within_abs(std::string id, double value, double target, double tol, std::string detail) {
  if (profile_ == ToleranceProfile::Strict) tol *= 0.5;
  return push({std::move(id), {}, value, target, tol, "abs", std::fabs(value - target) <= tol, true, std::move(detail)});
}

Check& CheckList::within_rel(std::string id, double value, double target, double tol, std::string detail) {
  if (profile_ == ToleranceProfile::Strict) tol *= 0.5;
  return push({std::move(id), {}, value, target, tol, "rel", std::fabs(value - target) <= tol * std::fabs(target), true,
               std::move(detail)});
}

Check& CheckList::at_most(std::string id, double value, double limit, std::string detail) {
  return push({std::move(id), {}, value, limit, 0.0, "max", value <= limit, true, std::move(detail)});
}

Check& CheckList::above(std::string id, double value, double limit, std::string detail) {
  return push({std::move(id), {}, value, limit, 0.0, "min", value > limit, true, std::move(detail)});
}

Check& CheckList::flag(std::string id, bool ok, std::string detail) {
  return push({std::move(id), {}, ok ? 1.0 : 0.0, 1.0, 0.0, "flag", ok, true, std::move(detail)});
}

bool all_gating_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (c.gating && !c.passed) return false;
  return true;
}

void write_checks_csv(const std::vector<Check>& checks, std::ostream& out) {
  write_csv_row(out, {"stage", "id", "value", "target", "tolerance", "rule", "gating", "result", "detail"});
  for (const auto& c : checks)
    write_csv_row(out, {c.stage, c.id, format_number(c.value), format_number(c.target), format_number(c.tolerance),
                        c.rule, c.gating ? "yes" : "no", c.passed ? "pass" : "fail", c.detail});
}

}  // namespace wxfleet::report
