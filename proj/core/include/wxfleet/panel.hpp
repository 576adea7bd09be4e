#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wxfleet/modes.hpp"

namespace wxfleet {

enum class Experiment { CrossSectional, Rollout };

std::string_view to_string(Experiment experiment);

/// One driver-period observation. Cross-sectional records are single trips
/// (period = hour of day); rollout records are driver-day shifts (period =
/// shift start hour) with weather averaged over the shift.
struct PanelRecord {
  int driver_id = 0;
  int day = 1;
  int period = 0;
  OperationalMode mode = OperationalMode::Traditional;
  bool treated = false;
  int implement_day = 0;  ///< 0 when the driver is outside the rollout
  int relative_day = 0;   ///< day - implement_day; meaningful only for rollout
  double revenue_per_min = 0.0;
  double wait_min = 0.0;
  double utilization = 0.0;
  double daily_earnings = 0.0;
  double rain_mm = 0.0;
  double temp_c = 0.0;
  double wind_mps = 0.0;
  double visibility_km = 0.0;
  bool heavy_rain = false;
  SkillLevel skill = SkillLevel::Medium;
  // Covariates.
  double heavy_rain_share = 0.0;
  double extreme_temp_share = 0.0;
  double low_visibility_share = 0.0;
  double high_wind_share = 0.0;
  bool weekend = false;
  double experience_years = 0.0;

  bool operator==(const PanelRecord&) const = default;
};

struct PanelDataset {
  Experiment experiment = Experiment::CrossSectional;
  std::vector<PanelRecord> records;
  std::string config_hash;
  std::uint64_t seed = 0;

  /// Numeric view of a column by its CSV name (booleans as 0/1, mode as
  /// 1 for weather-aware, skill as 0/1/2). Throws SchemaError for unknown names.
  std::vector<double> column(std::string_view name) const;
};

/// CSV column order.
const std::vector<std::string>& panel_columns();

/// Writes the panel as CSV; relative_day and implement_day print NA for
/// cross-sectional records.
void write_panel_csv(const PanelDataset& panel, std::ostream& out);

/// Parses a panel CSV. The header must equal panel_columns() exactly; any
/// missing or extra column, malformed number or unknown enum value raises
/// SchemaError naming it. The experiment tag is inferred from relative_day.
PanelDataset parse_panel_csv(std::string_view text);
PanelDataset read_panel_csv(const std::filesystem::path& path);

}  // namespace wxfleet
