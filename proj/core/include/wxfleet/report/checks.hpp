#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wxfleet::report {

/// `Strict` halves every tolerance band; one-sided thresholds are unchanged.
enum class ToleranceProfile { Default, Strict };

ToleranceProfile parse_tolerance_profile(std::string_view text);
std::string_view to_string(ToleranceProfile profile);

struct Check {
  std::string id;
  std::string stage;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string rule;  ///< abs | rel | max | min | flag
  bool passed = false;
  bool gating = true;  ///< informational rows never affect the exit code
  std::string detail;
};

class CheckList {
 public:
  CheckList(std::string stage, ToleranceProfile profile) : stage_(std::move(stage)), profile_(profile) {}

  /// |value - target| <= tol.
  Check& within_abs(std::string id, double value, double target, double tol, std::string detail = {});
  /// |value - target| <= tol * |target|.
  Check& within_rel(std::string id, double value, double target, double tol, std::string detail = {});
  /// value <= limit.
  Check& at_most(std::string id, double value, double limit, std::string detail = {});
  /// value > limit (strictly).
  Check& above(std::string id, double value, double limit, std::string detail = {});
  Check& flag(std::string id, bool ok, std::string detail = {});

  std::vector<Check>& checks() noexcept { return checks_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }

 private:
  Check& push(Check c);
  std::string stage_;
  ToleranceProfile profile_;
  std::vector<Check> checks_;
};

bool all_gating_passed(const std::vector<Check>& checks);
void write_checks_csv(const std::vector<Check>& checks, std::ostream& out);

}  // namespace wxfleet::report
