#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "abpf/analysis.hpp"
#include "abpf/bounds.hpp"
#include "abpf/partition.hpp"
#include "abpf/scenario.hpp"

namespace abpf {

struct RunOptions {
  /// Artifacts are written here; nothing is written when empty.
  std::filesystem::path out_dir;
  unsigned threads = 1;
};

struct EngineOutcome {
  std::string engine;
  std::size_t particles = 0;  // 0 for the exact engines
  bool ok = true;
  std::string error;
  double seconds = 0.0;
};

struct RunResult {
  std::string digest;
  std::uint64_t seed = 0;
  std::uint64_t trajectory_seed = 0;
  std::vector<EngineOutcome> engines;
  PartitionStats stats;
  /// Exact bias of the scheduled blocked filter.
  std::optional<ErrorReport> error_report;
  /// Exact bias under each schedule partition used alone (compare_fixed).
  std::vector<ErrorReport> fixed_reports;
  std::optional<BoundReport> bounds;
  std::string bounds_error;
  std::vector<std::filesystem::path> artifacts;

  bool all_ok() const noexcept {
    for (const auto& e : engines) {
      if (!e.ok) return false;
    }
    return true;
  }
};

/// Simulates one trajectory from the scenario seed and runs every selected
/// engine on its observations. Engine failures are recorded per engine and
/// the remaining engines still run.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Partition statistics table; writes stats.csv when out_dir is set.
PartitionStats cmd_stats(const Scenario& scenario, const RunOptions& options,
                         std::ostream& console);

/// Mixing constants and the bias bound per site; writes bounds.csv.
BoundReport cmd_bounds(const Scenario& scenario, const RunOptions& options,
                       std::ostream& console);

/// Brute-force correlation tables for the initial law and, when the dense
/// engines fit, for the final blocked filter; writes corr.csv.
void cmd_diagnose_corr(const Scenario& scenario, const RunOptions& options,
                       std::ostream& console);

/// beta used for the vartheta statistics: the theorem's beta when it is
/// defined and finite, else the scenario's fallback.
double statistics_beta(const Scenario& scenario, const FieldModel& model);

}  // namespace abpf
