// wxfleet: simulate, analyze, causal, econ, all.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wxfleet/config.hpp"
#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"
#include "wxfleet/report/manifest.hpp"
#include "wxfleet/report/pipeline.hpp"

namespace {

void print_checks(const wxfleet::report::CommandResult& r) {
  using wxfleet::report::format_number;
  for (const auto& c : r.checks) {
    std::printf("%-5s %-48s value=%s target=%s", c.passed ? "PASS" : "FAIL", c.id.c_str(),
                format_number(c.value).c_str(), format_number(c.target).c_str());
    if (c.rule == "abs" || c.rule == "rel") std::printf(" tol=%s(%s)", format_number(c.tolerance).c_str(), c.rule.c_str());
    if (!c.gating) std::printf(" [info]");
    if (!c.detail.empty()) std::printf("  # %s", c.detail.c_str());
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weather-aware taxi fleet simulation and causal analysis"};
  app.set_version_flag("--version", wxfleet::report::library_version());
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::vector<std::string> skip;
  std::string profile = "default";
  wxfleet::report::PipelineOptions opt;
  std::optional<int> working_days;

  app.add_option("--config", config_path, "JSON config; absent keys keep their defaults")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  app.add_option("--skip", skip, "Stage to skip (all only): simulate|analyze|causal|econ")
      ->check(CLI::IsMember(wxfleet::report::kStages));
  app.add_option("--tolerance-profile", profile, "default|strict")
      ->check(CLI::IsMember({"default", "strict"}))
      ->capture_default_str();
  app.add_option("--discount-rate", opt.discount_rate, "NPV discount rate per year")->capture_default_str();
  app.add_option("--horizon-years", opt.horizon_years, "NPV horizon")->capture_default_str();
  app.add_option("--working-days", working_days, "Working days per year (default from config)");
  app.add_option("--placebo-draws", opt.placebo_draws, "Draws per placebo design")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Generate cross-sectional and rollout panels");
  auto* analyze = app.add_subcommand("analyze", "Productivity, correlation, component and skill tables");
  auto* causal = app.add_subcommand("causal", "Causal estimators on the rollout panel");
  auto* econ = app.add_subcommand("econ", "ROI, payback, NPV and sensitivity");
  auto* all = app.add_subcommand("all", "simulate, analyze, causal and econ in order");
  for (auto* sub : {simulate, analyze, causal, econ, all}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = config_path.empty() ? wxfleet::SimConfig{} : wxfleet::load_config(config_path);
    if (seed) config.seed = *seed;
    wxfleet::validate(config);
    opt.out_dir = out_dir;
    opt.skip.insert(skip.begin(), skip.end());
    opt.profile = wxfleet::report::parse_tolerance_profile(profile);
    opt.working_days = working_days;
    if (!skip.empty() && !all->parsed()) throw wxfleet::ValidationError("skip", "only valid with 'all'");

    wxfleet::report::CommandResult r;
    if (simulate->parsed()) r = wxfleet::report::cmd_simulate(config, opt);
    if (analyze->parsed()) r = wxfleet::report::cmd_analyze(config, opt);
    if (causal->parsed()) r = wxfleet::report::cmd_causal(config, opt);
    if (econ->parsed()) r = wxfleet::report::cmd_econ(config, opt);
    if (all->parsed()) r = wxfleet::report::cmd_all(config, opt);

    print_checks(r);
    for (const auto& f : r.files) std::printf("wrote %s/%s\n", out_dir.c_str(), f.c_str());
    if (!r.passed()) {
      std::size_t failed = 0;
      for (const auto& c : r.checks) failed += c.gating && !c.passed;
      std::fflush(stdout);
      std::fprintf(stderr, "%zu check(s) failed\n", failed);
      return 1;
    }
    return 0;
  } catch (const wxfleet::Error& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
