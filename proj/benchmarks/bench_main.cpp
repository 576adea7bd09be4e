#include <benchmark/benchmark.h>

#include "wxfleet/config.hpp"
#include "wxfleet/econometrics/did.hpp"
#include "wxfleet/econometrics/frame.hpp"
#include "wxfleet/econometrics/regression.hpp"
#include "wxfleet/sim.hpp"

using namespace wxfleet;
namespace ec = wxfleet::econometrics;

namespace {

const ec::Frame& rollout_frame() {
  static const ec::Frame f = ec::make_frame(run_staggered_rollout(SimConfig{}));
  return f;
}

void BM_CrossSectional(benchmark::State& state) {
  const SimConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(summarize(run_cross_sectional(config)));
}
BENCHMARK(BM_CrossSectional)->Unit(benchmark::kMillisecond);

void BM_Rollout(benchmark::State& state) {
  const SimConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(run_staggered_rollout(config));
}
BENCHMARK(BM_Rollout)->Unit(benchmark::kMillisecond);

void BM_TwoWayFixedEffects(benchmark::State& state) {
  const auto& f = rollout_frame();
  ec::RegressionSpec spec;
  spec.outcome = "revenue_per_min";
  spec.regressors = {"treated"};
  spec.covariates = {"heavy_rain_share"};
  spec.driver_fe = true;
  spec.time_fe = true;
  spec.cluster = "driver_id";
  for (auto _ : state) benchmark::DoNotOptimize(ec::ols(f, spec));
}
BENCHMARK(BM_TwoWayFixedEffects)->Unit(benchmark::kMillisecond);

void BM_Did(benchmark::State& state) {
  const auto& f = rollout_frame();
  for (auto _ : state) benchmark::DoNotOptimize(ec::did(f));
}
BENCHMARK(BM_Did)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
