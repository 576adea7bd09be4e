#pragma once

#include <array>
#include <string_view>

namespace wxfleet {

enum class OperationalMode { Traditional, RouteOnlyAI, WeatherAwareAI };
enum class SkillLevel { Low, Medium, High };

inline constexpr std::array<OperationalMode, 3> kAllModes{
    OperationalMode::Traditional, OperationalMode::RouteOnlyAI, OperationalMode::WeatherAwareAI};
inline constexpr std::array<SkillLevel, 3> kAllSkills{SkillLevel::Low, SkillLevel::Medium,
                                                      SkillLevel::High};

/// "traditional", "route_only_ai", "weather_aware_ai".
std::string_view to_string(OperationalMode mode);
/// "low", "medium", "high".
std::string_view to_string(SkillLevel skill);

/// Inverse of to_string; throws SchemaError on unknown text.
OperationalMode parse_mode(std::string_view text);
SkillLevel parse_skill(std::string_view text);

inline constexpr std::size_t index_of(SkillLevel s) { return static_cast<std::size_t>(s); }

}  // namespace wxfleet
