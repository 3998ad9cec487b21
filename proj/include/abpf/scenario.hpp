#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abpf/bounds.hpp"
#include "abpf/graph.hpp"
#include "abpf/model.hpp"
#include "abpf/partition.hpp"

namespace abpf {

/// Raised for malformed or inconsistent scenario files. The message names the
/// offending field and, for syntax errors, the line and column.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphSpec {
  std::string family = "cycle";  // cycle | torus | explicit
  int vertices = 5;              // cycle, explicit
  int width = 0;                 // torus
  int height = 0;                // torus
  std::vector<std::pair<int, int>> edges;  // explicit
  int radius = 1;
};

struct ModelSpec {
  std::string family = "uniform_mixture";
  double lambda = 0.9;
  double coupling = 1.0;
  double obs_noise = 0.2;
};

struct InitialSpec {
  std::string kind = "uniform";  // uniform | point
  std::vector<int> config;       // point
};

struct ScheduleSpec {
  std::string generator = "shifted_cycle";  // shifted_cycle | torus_tiling | explicit
  std::vector<int> block_sizes{2, 3};       // shifted_cycle
  int shifts = 5;                           // shifted_cycle
  int tile_width = 0;                       // torus_tiling
  int tile_height = 0;                      // torus_tiling
  std::vector<std::pair<int, int>> offsets; // torus_tiling
  std::vector<std::vector<VertexSet>> partitions;  // explicit
  /// Empty means cyclic switching.
  std::vector<std::size_t> sequence;
};

struct EngineSelection {
  bool exact = true;
  bool blocked_exact = true;
  bool bootstrap = true;
  bool blocked_pf = true;
  bool abpf = true;
};

struct BoundSpec {
  int constants = 18;                  // 18 or 16
  bool theta_extra_inverse_m = true;
  /// beta used for the vartheta statistics when the theorem's beta is
  /// undefined (epsilon at or below the threshold).
  double fallback_beta = 1.0;
  double variance_alpha = 1.0;
  double variance_beta = 1.0;
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  GraphSpec graph;
  ModelSpec model;
  InitialSpec initial;
  ScheduleSpec schedule;
  std::size_t horizon = 20;
  std::vector<std::size_t> particles{200};
  std::size_t replicates = 10;
  std::size_t window = 5;
  EngineSelection engines;
  /// Index of the schedule partition used by the fixed-partition blocked
  /// particle filter.
  std::size_t blocked_pf_partition = 0;
  /// Also run the blocked exact filter under each schedule partition alone.
  bool compare_fixed = false;
  BoundSpec bounds;
  std::size_t dense_cap = 4096;
};

/// Parses and validates; unknown keys and a missing seed are errors.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Checks internal consistency (caps, window, indices); throws ScenarioError.
void validate_scenario(const Scenario& s);

/// FNV-1a over the canonical (key-sorted) JSON form, as 16 hex digits.
std::string scenario_digest(const Scenario& s);

std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

FieldGraph build_graph(const GraphSpec& spec);
FieldModel build_model(const FieldGraph& graph, const ModelSpec& spec);
InitialLaw build_initial(const FieldModel& model, const InitialSpec& spec);
PartitionSchedule build_schedule(const FieldGraph& graph,
                                 const ScheduleSpec& spec);

}  // namespace abpf
