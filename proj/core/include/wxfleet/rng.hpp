#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "wxfleet/config.hpp"

namespace wxfleet {

/// Labels accepted by spawn_stream. Each module draws from its own stream so
/// that adding draws in one module never shifts another module's sequence.
inline constexpr std::array<std::string_view, 11> kStreamNames{
    "weather",          "forecast",         "fleet",        "demand",
    "rollout.weather",  "rollout.forecast", "rollout.fleet", "rollout.demand",
    "placebo",          "decomposition",    "test"};

/// Deterministic random source. The engine is mt19937_64 (whose output is
/// fixed by the standard); the distribution transforms are implemented here
/// rather than taken from <random> so draws are identical across standard
/// library implementations.
///
/// Single owner: not safe for concurrent use.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view label);

  const std::string& label() const noexcept { return label_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer on the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p);
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  /// Gamma(shape, scale) via Marsaglia-Tsang.
  double gamma(double shape, double scale);
  /// Index drawn with probability proportional to `weights`.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::string label_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// Derives the stream for `label` from the config's master seed. Throws
/// ValidationError for labels outside kStreamNames.
Rng spawn_stream(const SimConfig& config, std::string_view label);

/// Seed mixing used by spawn_stream: splitmix64(seed ^ fnv1a64(label)).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label);

}  // namespace wxfleet
