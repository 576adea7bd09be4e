#include "wxfleet/panel.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <utility>

#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"

namespace wxfleet {

std::string_view to_string(Experiment e) {
  return e == Experiment::Rollout ? "rollout" : "cross_sectional";
}

namespace {

using Getter = std::function<double(const PanelRecord&)>;

const std::vector<std::pair<std::string, Getter>>& numeric_columns() {
  static const std::vector<std::pair<std::string, Getter>> cols = {
      {"driver_id", [](const PanelRecord& r) { return double(r.driver_id); }},
      {"day", [](const PanelRecord& r) { return double(r.day); }},
      {"period", [](const PanelRecord& r) { return double(r.period); }},
      {"mode", [](const PanelRecord& r) { return r.mode == OperationalMode::WeatherAwareAI ? 1.0 : 0.0; }},
      {"treated", [](const PanelRecord& r) { return r.treated ? 1.0 : 0.0; }},
      {"implement_day", [](const PanelRecord& r) { return double(r.implement_day); }},
      {"relative_day", [](const PanelRecord& r) { return double(r.relative_day); }},
      {"revenue_per_min", [](const PanelRecord& r) { return r.revenue_per_min; }},
      {"wait_min", [](const PanelRecord& r) { return r.wait_min; }},
      {"utilization", [](const PanelRecord& r) { return r.utilization; }},
      {"daily_earnings", [](const PanelRecord& r) { return r.daily_earnings; }},
      {"rain_mm", [](const PanelRecord& r) { return r.rain_mm; }},
      {"temp_c", [](const PanelRecord& r) { return r.temp_c; }},
      {"wind_mps", [](const PanelRecord& r) { return r.wind_mps; }},
      {"visibility_km", [](const PanelRecord& r) { return r.visibility_km; }},
      {"heavy_rain", [](const PanelRecord& r) { return r.heavy_rain ? 1.0 : 0.0; }},
      {"skill", [](const PanelRecord& r) { return double(index_of(r.skill)); }},
      {"heavy_rain_share", [](const PanelRecord& r) { return r.heavy_rain_share; }},
      {"extreme_temp_share", [](const PanelRecord& r) { return r.extreme_temp_share; }},
      {"low_visibility_share", [](const PanelRecord& r) { return r.low_visibility_share; }},
      {"high_wind_share", [](const PanelRecord& r) { return r.high_wind_share; }},
      {"weekend", [](const PanelRecord& r) { return r.weekend ? 1.0 : 0.0; }},
      {"experience_years", [](const PanelRecord& r) { return r.experience_years; }},
  };
  return cols;
}

}  // namespace

const std::vector<std::string>& panel_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, _] : numeric_columns()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<double> PanelDataset::column(std::string_view name) const {
  for (const auto& [col, get] : numeric_columns()) {
    if (col != name) continue;
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(get(r));
    return out;
  }
  throw SchemaError("unknown panel column '" + std::string(name) + "'");
}

void write_panel_csv(const PanelDataset& panel, std::ostream& out) {
  using report::format_number;
  report::write_csv_row(out, panel_columns());
  const bool rollout = panel.experiment == Experiment::Rollout;
  std::vector<std::string> row;
  for (const auto& r : panel.records) {
    row = {std::to_string(r.driver_id),
           std::to_string(r.day),
           std::to_string(r.period),
           std::string(to_string(r.mode)),
           r.treated ? "1" : "0",
           rollout ? std::to_string(r.implement_day) : "NA",
           rollout ? std::to_string(r.relative_day) : "NA",
           format_number(r.revenue_per_min),
           format_number(r.wait_min),
           format_number(r.utilization),
           format_number(r.daily_earnings),
           format_number(r.rain_mm),
           format_number(r.temp_c),
           format_number(r.wind_mps),
           format_number(r.visibility_km),
           r.heavy_rain ? "1" : "0",
           std::string(to_string(r.skill)),
           format_number(r.heavy_rain_share),
           format_number(r.extreme_temp_share),
           format_number(r.low_visibility_share),
           format_number(r.high_wind_share),
           r.weekend ? "1" : "0",
           format_number(r.experience_years)};
    report::write_csv_row(out, row);
  }
}

namespace {

int parse_int(std::string_view cell, std::string_view column) {
  const double v = report::parse_number(cell, column);
  if (!std::isfinite(v) || v != std::floor(v))
    throw SchemaError("column '" + std::string(column) + "': expected integer, found '" +
                      std::string(cell) + "'");
  return static_cast<int>(v);
}

bool parse_bool(std::string_view cell, std::string_view column) {
  if (cell == "1") return true;
  if (cell == "0") return false;
  throw SchemaError("column '" + std::string(column) + "': expected 0/1, found '" + std::string(cell) + "'");
}

}  // namespace

PanelDataset parse_panel_csv(std::string_view text) {
  const auto table = report::parse_csv(text);
  const auto& expected = panel_columns();
  for (const auto& name : expected) table.column(name);
  if (table.header != expected) {
    for (const auto& h : table.header) {
      bool known = false;
      for (const auto& e : expected) known = known || e == h;
      if (!known) throw SchemaError("unexpected column '" + h + "'");
    }
    throw SchemaError("columns out of order");
  }

  PanelDataset panel;
  panel.experiment = Experiment::CrossSectional;
  if (!table.rows.empty() && table.rows.front()[6] != "NA") panel.experiment = Experiment::Rollout;
  const bool rollout = panel.experiment == Experiment::Rollout;
  panel.records.reserve(table.rows.size());
  auto num = [&](const std::vector<std::string>& row, std::size_t i) {
    return report::parse_number(row[i], expected[i]);
  };
  for (const auto& row : table.rows) {
    PanelRecord r;
    r.driver_id = parse_int(row[0], expected[0]);
    r.day = parse_int(row[1], expected[1]);
    r.period = parse_int(row[2], expected[2]);
    r.mode = parse_mode(row[3]);
    r.treated = parse_bool(row[4], expected[4]);
    if (rollout) {
      r.implement_day = parse_int(row[5], expected[5]);
      r.relative_day = parse_int(row[6], expected[6]);
    } else if (row[5] != "NA" || row[6] != "NA") {
      throw SchemaError("column 'relative_day': mixed NA and numeric values");
    }
    r.revenue_per_min = num(row, 7);
    r.wait_min = num(row, 8);
    r.utilization = num(row, 9);
    r.daily_earnings = num(row, 10);
    r.rain_mm = num(row, 11);
    r.temp_c = num(row, 12);
    r.wind_mps = num(row, 13);
    r.visibility_km = num(row, 14);
    r.heavy_rain = parse_bool(row[15], expected[15]);
    r.skill = parse_skill(row[16]);
    r.heavy_rain_share = num(row, 17);
    r.extreme_temp_share = num(row, 18);
    r.low_visibility_share = num(row, 19);
    r.high_wind_share = num(row, 20);
    r.weekend = parse_bool(row[21], expected[21]);
    r.experience_years = num(row, 22);
    panel.records.push_back(r);
  }
  return panel;
}

PanelDataset read_panel_csv(const std::filesystem::path& path) {
  try {
    return parse_panel_csv(report::read_text_file(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace wxfleet
