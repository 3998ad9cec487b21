// Command-line front end: run, stats, bounds, diagnose-corr, presets.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "abpf/errors.hpp"
#include "abpf/harness.hpp"
#include "abpf/scenario.hpp"

namespace {

constexpr int kValidationError = 2;
constexpr int kEngineError = 3;

struct CommonArgs {
  std::string scenario_path;
  std::string preset_name;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--scenario", args.scenario_path, "Scenario file (JSON)");
  cmd->add_option("--preset", args.preset_name, "Built-in scenario name");
  cmd->add_option("--seed", args.seed, "Master seed (overrides the file)");
  cmd->add_option("--out", args.out_dir, "Output directory for CSV/JSON artifacts");
  cmd->add_option("--threads", args.threads, "Worker threads for replicates")
      ->check(CLI::PositiveNumber);
}

abpf::Scenario resolve(const CommonArgs& args) {
  if (args.scenario_path.empty() == args.preset_name.empty()) {
    throw abpf::ScenarioError("give exactly one of --scenario or --preset");
  }
  abpf::Scenario s = args.scenario_path.empty()
                         ? abpf::preset(args.preset_name)
                         : abpf::load_scenario(args.scenario_path);
  if (args.seed) s.seed = *args.seed;
  abpf::validate_scenario(s);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptively blocked particle filter toolkit"};
  app.require_subcommand(1);

  CommonArgs run_args, stats_args, bounds_args, corr_args;
  auto* run = app.add_subcommand("run", "Simulate one trajectory and run the selected engines");
  add_common(run, run_args);
  auto* stats = app.add_subcommand("stats", "Print partition statistics");
  add_common(stats, stats_args);
  auto* bounds = app.add_subcommand("bounds", "Evaluate the bias bound per site");
  add_common(bounds, bounds_args);
  auto* corr = app.add_subcommand("diagnose-corr", "Brute-force correlation tables");
  add_common(corr, corr_args);
  auto* presets = app.add_subcommand("presets", "List or write built-in scenarios");
  std::string preset_out;
  presets->add_option("--out", preset_out, "Write each preset as <name>.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationError;
  }

  auto options = [](const CommonArgs& a) {
    return abpf::RunOptions{a.out_dir, a.threads};
  };

  abpf::Scenario scenario;
  const CommonArgs* active = nullptr;
  if (run->parsed()) active = &run_args;
  if (stats->parsed()) active = &stats_args;
  if (bounds->parsed()) active = &bounds_args;
  if (corr->parsed()) active = &corr_args;

  if (presets->parsed()) {
    try {
      for (const auto& name : abpf::preset_names()) {
        std::cout << name << '\n';
        if (!preset_out.empty()) {
          std::filesystem::create_directories(preset_out);
          abpf::save_scenario(abpf::preset(name),
                              std::filesystem::path(preset_out) / (name + ".json"));
        }
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kEngineError;
    }
    return 0;
  }

  try {
    scenario = resolve(*active);
  } catch (const abpf::ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kValidationError;
  }

  try {
    if (run->parsed()) {
      const auto res = abpf::run_scenario(scenario, options(run_args));
      std::cout << "scenario " << scenario.name << " digest " << res.digest << " seed "
                << res.seed << '\n';
      for (const auto& e : res.engines) {
        std::cout << "  " << e.engine;
        if (e.particles) std::cout << " N=" << e.particles;
        std::cout << (e.ok ? " ok" : " FAILED: " + e.error) << " (" << e.seconds
                  << " s)\n";
      }
      if (res.error_report) {
        std::cout << "  window bias spread: max-min "
                  << res.error_report->window_spread.max_minus_min << ", std "
                  << res.error_report->window_spread.std_dev << '\n';
      }
      if (!res.bounds_error.empty()) {
        std::cout << "  bounds unavailable: " << res.bounds_error << '\n';
      }
      return res.all_ok() ? 0 : kEngineError;
    }
    if (stats->parsed()) abpf::cmd_stats(scenario, options(stats_args), std::cout);
    if (bounds->parsed()) abpf::cmd_bounds(scenario, options(bounds_args), std::cout);
    if (corr->parsed()) abpf::cmd_diagnose_corr(scenario, options(corr_args), std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEngineError;
  }
  return 0;
}
