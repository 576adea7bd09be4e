#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wxfleet/econometrics/did.hpp"
#include "wxfleet/rng.hpp"

namespace wxfleet::econometrics {

struct PlaceboDraw {
  std::string kind;  ///< "fake_date" or "permuted"
  int draw = 0;
  double effect = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p_value = 1.0;
  std::string error;
};

struct PlaceboReport {
  std::vector<PlaceboDraw> draws;
  int fake_date_draws = 0;          ///< successful draws
  double fake_date_significant_share = 0.0;  ///< |t| >= 1.96
  int permuted_draws = 0;
  double permuted_significant_share = 0.0;
  double permuted_mean_effect = 0.0;
  double permuted_mean_se = 0.0;
  EffectEstimate actual;  ///< DiD under the true dates
};

/// DiD re-run (a) on the pre-adoption driver-days with fake implementation
/// days drawn inside that period, (b) on the full panel with implementation
/// days permuted across drivers. Throws ValidationError for n_draws < 20.
PlaceboReport placebo_suite(const Frame& rollout, int n_draws, Rng& rng, const DidOptions& options = {});

enum class HeterogeneityDimension { Skill, Weather, DayType };

struct HeterogeneityRow {
  std::string dimension;
  std::string subgroup;
  std::optional<EffectEstimate> estimate;
  std::string reason;  ///< why the row has no estimate
};

/// DiD within each subgroup: skill level, heavy-rain versus clear driver-days,
/// weekday versus weekend.
std::vector<HeterogeneityRow> heterogeneity(const Frame& rollout, HeterogeneityDimension dimension,
                                            const DidOptions& options = {});

std::string_view to_string(HeterogeneityDimension dimension);

}  // namespace wxfleet::econometrics
