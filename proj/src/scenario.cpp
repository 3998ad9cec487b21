#include "abpf/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "abpf/errors.hpp"

namespace abpf {

using nlohmann::json;

namespace {

/// Reads one JSON object, tracking which keys were consumed so leftovers can
/// be reported as unknown.
static_assert(sizeof(std::size_t) == sizeof(std::uint64_t),
              "seed fields are read through the size_t overload");

class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& field, const std::string& what) {
    throw ScenarioError(field + ": " + what);
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    read(j_.at(key), field(key), out);
  }

  template <typename T>
  void require(const std::string& key, T& out) {
    if (!has(key)) fail(field(key), "missing required field");
    read(j_.at(key), field(key), out);
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) fail(field(key), "unknown key");
    }
  }

  static void read(const json& v, const std::string& f, bool& out) {
    if (!v.is_boolean()) fail(f, "expected a boolean");
    out = v.get<bool>();
  }
  static void read(const json& v, const std::string& f, double& out) {
    if (!v.is_number()) fail(f, "expected a number");
    out = v.get<double>();
  }
  static void read(const json& v, const std::string& f, int& out) {
    if (!v.is_number_integer()) fail(f, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < INT32_MIN || x > INT32_MAX) fail(f, "integer out of range");
    out = static_cast<int>(x);
  }
  static void read(const json& v, const std::string& f, std::size_t& out) {
    if (!v.is_number_unsigned()) fail(f, "expected a non-negative integer");
    out = static_cast<std::size_t>(v.get<std::uint64_t>());
  }
  static void read(const json& v, const std::string& f, std::string& out) {
    if (!v.is_string()) fail(f, "expected a string");
    out = v.get<std::string>();
  }
  template <typename T>
  static void read(const json& v, const std::string& f, std::vector<T>& out) {
    if (!v.is_array()) fail(f, "expected an array");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      T x{};
      read(v[i], f + "[" + std::to_string(i) + "]", x);
      out.push_back(std::move(x));
    }
  }
  static void read(const json& v, const std::string& f, std::pair<int, int>& out) {
    if (!v.is_array() || v.size() != 2) fail(f, "expected a pair [a, b]");
    read(v[0], f + "[0]", out.first);
    read(v[1], f + "[1]", out.second);
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_graph(const json& j, GraphSpec& g) {
  ObjectReader r(j, "graph");
  r.require("family", g.family);
  r.get("radius", g.radius);
  if (g.family == "cycle") {
    r.require("vertices", g.vertices);
  } else if (g.family == "torus") {
    r.require("width", g.width);
    r.require("height", g.height);
    g.vertices = g.width * g.height;
  } else if (g.family == "explicit") {
    r.require("vertices", g.vertices);
    r.require("edges", g.edges);
  } else {
    ObjectReader::fail("graph.family", "unknown family '" + g.family +
                                           "' (expected cycle, torus or explicit)");
  }
  r.finish();
}

void read_model(const json& j, ModelSpec& m) {
  ObjectReader r(j, "model");
  r.get("family", m.family);
  if (m.family != "uniform_mixture") {
    ObjectReader::fail("model.family", "unknown family '" + m.family + "'");
  }
  r.get("lambda", m.lambda);
  r.get("coupling", m.coupling);
  r.get("obs_noise", m.obs_noise);
  r.finish();
}

void read_initial(const json& j, InitialSpec& s) {
  ObjectReader r(j, "initial");
  r.require("kind", s.kind);
  if (s.kind == "point") {
    r.require("config", s.config);
  } else if (s.kind != "uniform") {
    ObjectReader::fail("initial.kind", "expected uniform or point");
  }
  r.finish();
}

void read_schedule(const json& j, ScheduleSpec& s) {
  ObjectReader r(j, "schedule");
  r.require("generator", s.generator);
  if (s.generator == "shifted_cycle") {
    r.require("block_sizes", s.block_sizes);
    r.require("shifts", s.shifts);
  } else if (s.generator == "torus_tiling") {
    r.require("tile_width", s.tile_width);
    r.require("tile_height", s.tile_height);
    r.require("offsets", s.offsets);
  } else if (s.generator == "explicit") {
    r.require("partitions", s.partitions);
  } else {
    ObjectReader::fail("schedule.generator",
                       "expected shifted_cycle, torus_tiling or explicit");
  }
  r.get("sequence", s.sequence);
  r.finish();
}

void read_engines(const json& j, EngineSelection& e) {
  ObjectReader r(j, "engines");
  r.get("exact", e.exact);
  r.get("blocked_exact", e.blocked_exact);
  r.get("bootstrap", e.bootstrap);
  r.get("blocked_pf", e.blocked_pf);
  r.get("abpf", e.abpf);
  r.finish();
}

void read_bounds(const json& j, BoundSpec& b) {
  ObjectReader r(j, "bounds");
  r.get("constants", b.constants);
  r.get("theta_extra_inverse_m", b.theta_extra_inverse_m);
  r.get("fallback_beta", b.fallback_beta);
  r.get("variance_alpha", b.variance_alpha);
  r.get("variance_beta", b.variance_beta);
  r.finish();
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json pairs_to_json(const std::vector<std::pair<int, int>>& v) {
  json a = json::array();
  for (const auto& [x, y] : v) a.push_back({x, y});
  return a;
}

json to_json(const Scenario& s) {
  json g = {{"family", s.graph.family}, {"radius", s.graph.radius}};
  if (s.graph.family == "torus") {
    g["width"] = s.graph.width;
    g["height"] = s.graph.height;
  } else {
    g["vertices"] = s.graph.vertices;
  }
  if (s.graph.family == "explicit") g["edges"] = pairs_to_json(s.graph.edges);

  json sched = {{"generator", s.schedule.generator}};
  if (s.schedule.generator == "shifted_cycle") {
    sched["block_sizes"] = s.schedule.block_sizes;
    sched["shifts"] = s.schedule.shifts;
  } else if (s.schedule.generator == "torus_tiling") {
    sched["tile_width"] = s.schedule.tile_width;
    sched["tile_height"] = s.schedule.tile_height;
    sched["offsets"] = pairs_to_json(s.schedule.offsets);
  } else {
    sched["partitions"] = s.schedule.partitions;
  }
  if (!s.schedule.sequence.empty()) sched["sequence"] = s.schedule.sequence;

  json init = {{"kind", s.initial.kind}};
  if (s.initial.kind == "point") init["config"] = s.initial.config;

  return json{
      {"name", s.name},
      {"seed", s.seed},
      {"graph", g},
      {"model",
       {{"family", s.model.family},
        {"lambda", s.model.lambda},
        {"coupling", s.model.coupling},
        {"obs_noise", s.model.obs_noise}}},
      {"initial", init},
      {"schedule", sched},
      {"horizon", s.horizon},
      {"particles", s.particles},
      {"replicates", s.replicates},
      {"window", s.window},
      {"engines",
       {{"exact", s.engines.exact},
        {"blocked_exact", s.engines.blocked_exact},
        {"bootstrap", s.engines.bootstrap},
        {"blocked_pf", s.engines.blocked_pf},
        {"abpf", s.engines.abpf}}},
      {"blocked_pf_partition", s.blocked_pf_partition},
      {"compare_fixed", s.compare_fixed},
      {"bounds",
       {{"constants", s.bounds.constants},
        {"theta_extra_inverse_m", s.bounds.theta_extra_inverse_m},
        {"fallback_beta", s.bounds.fallback_beta},
        {"variance_alpha", s.bounds.variance_alpha},
        {"variance_beta", s.bounds.variance_beta}}},
      {"dense_cap", s.dense_cap},
  };
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ScenarioError("parse error at line " + std::to_string(line) +
                        ", column " + std::to_string(col) + ": " + e.what());
  }
  Scenario s;
  ObjectReader r(j, "");
  r.get("name", s.name);
  r.require("seed", s.seed);
  if (r.has("graph")) read_graph(r.raw("graph"), s.graph);
  else ObjectReader::fail("graph", "missing required field");
  if (r.has("model")) read_model(r.raw("model"), s.model);
  if (r.has("initial")) read_initial(r.raw("initial"), s.initial);
  if (r.has("schedule")) read_schedule(r.raw("schedule"), s.schedule);
  else ObjectReader::fail("schedule", "missing required field");
  r.get("horizon", s.horizon);
  r.get("particles", s.particles);
  r.get("replicates", s.replicates);
  r.get("window", s.window);
  if (r.has("engines")) read_engines(r.raw("engines"), s.engines);
  r.get("blocked_pf_partition", s.blocked_pf_partition);
  r.get("compare_fixed", s.compare_fixed);
  if (r.has("bounds")) read_bounds(r.raw("bounds"), s.bounds);
  r.get("dense_cap", s.dense_cap);
  r.finish();
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

std::string scenario_to_json(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError(path.string() + ": cannot write scenario file");
  out << scenario_to_json(s);
}

void validate_scenario(const Scenario& s) {
  auto fail = [](const std::string& f, const std::string& w) {
    ObjectReader::fail(f, w);
  };
  // Structural checks are delegated to the builders, which throw
  // InvalidArgument with a description; rewrap them with the field name.
  std::optional<FieldGraph> graph;
  try {
    graph.emplace(build_graph(s.graph));
  } catch (const std::exception& e) {
    fail("graph", e.what());
  }
  if (!graph->connected()) fail("graph", "graph must be connected");
  std::optional<FieldModel> model;
  try {
    model.emplace(build_model(*graph, s.model));
  } catch (const std::exception& e) {
    fail("model", e.what());
  }
  try {
    build_initial(*model, s.initial);
  } catch (const std::exception& e) {
    fail("initial", e.what());
  }
  std::optional<PartitionSchedule> schedule;
  try {
    schedule.emplace(build_schedule(*graph, s.schedule));
  } catch (const std::exception& e) {
    fail("schedule", e.what());
  }
  if (s.horizon == 0) fail("horizon", "must be positive");
  if (s.window == 0) fail("window", "must be positive");
  const bool dense = s.engines.exact || s.engines.blocked_exact || s.compare_fixed;
  if (dense) {
    const std::size_t space = model->state_space_size();
    if (space > s.dense_cap) {
      fail("engines", "exact engines need at most " + std::to_string(s.dense_cap) +
                          " joint configurations (dense_cap); this model has " +
                          (space == SIZE_MAX ? std::string("too many")
                                             : std::to_string(space)));
    }
    if (s.window > s.horizon) fail("window", "must not exceed horizon");
  }
  const bool particle = s.engines.bootstrap || s.engines.blocked_pf || s.engines.abpf;
  if (particle) {
    if (s.particles.empty()) fail("particles", "at least one particle count needed");
    for (std::size_t n : s.particles) {
      if (n == 0) fail("particles", "particle counts must be positive");
    }
    if (s.replicates == 0) fail("replicates", "must be positive");
  }
  if (s.blocked_pf_partition >= schedule->size()) {
    fail("blocked_pf_partition", "index beyond the schedule's partitions");
  }
  if (s.bounds.constants != 16 && s.bounds.constants != 18) {
    fail("bounds.constants", "must be 16 or 18");
  }
  if (!(s.bounds.fallback_beta > 0.0)) fail("bounds.fallback_beta", "must be positive");
  if (!(s.bounds.variance_alpha > 0.0) || !(s.bounds.variance_beta > 0.0)) {
    fail("bounds", "variance_alpha and variance_beta must be positive");
  }
}

std::string scenario_digest(const Scenario& s) {
  const std::string canon = to_json(s).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> preset_names() {
  return {"fig1-cycle", "fig1-partial", "torus-4x4", "torus-6x6-9offsets"};
}

Scenario preset(const std::string& name) {
  Scenario s;
  s.name = name;
  s.seed = 20240917;
  if (name == "fig1-cycle" || name == "fig1-partial") {
    s.graph = GraphSpec{"cycle", 5, 0, 0, {}, 1};
    s.model = ModelSpec{"uniform_mixture", 0.7, 1.0, 0.2};
    s.schedule.generator = "shifted_cycle";
    s.schedule.block_sizes = {2, 3};
    s.schedule.shifts = name == "fig1-cycle" ? 5 : 4;
    s.horizon = 50;
    s.window = name == "fig1-cycle" ? 5 : 4;
    s.particles = {200, 800, 3200};
    s.replicates = 20;
    s.compare_fixed = true;
    return s;
  }
  if (name == "torus-4x4") {
    s.graph = GraphSpec{"torus", 16, 4, 4, {}, 1};
    s.model = ModelSpec{"uniform_mixture", 0.7, 1.0, 0.2};
    s.schedule.generator = "torus_tiling";
    s.schedule.tile_width = 2;
    s.schedule.tile_height = 2;
    s.schedule.offsets = {{0, 0}, {1, 1}};
    s.horizon = 20;
    s.window = 2;
    s.particles = {200, 800};
    s.replicates = 10;
    s.engines.exact = false;
    s.engines.blocked_exact = false;
    return s;
  }
  if (name == "torus-6x6-9offsets") {
    s.graph = GraphSpec{"torus", 36, 6, 6, {}, 1};
    s.model = ModelSpec{"uniform_mixture", 0.7, 1.0, 0.2};
    s.schedule.generator = "torus_tiling";
    s.schedule.tile_width = 3;
    s.schedule.tile_height = 3;
    s.schedule.offsets.clear();
    for (int dy = 0; dy < 3; ++dy) {
      for (int dx = 0; dx < 3; ++dx) s.schedule.offsets.emplace_back(dx, dy);
    }
    s.horizon = 20;
    s.window = 9;
    s.particles = {200, 800};
    s.replicates = 10;
    s.engines.exact = false;
    s.engines.blocked_exact = false;
    return s;
  }
  throw ScenarioError("unknown preset '" + name + "'");
}

FieldGraph build_graph(const GraphSpec& spec) {
  if (spec.family == "cycle") return build_cycle_graph(spec.vertices, spec.radius);
  if (spec.family == "torus") return build_torus_grid(spec.width, spec.height, spec.radius);
  if (spec.family == "explicit") return FieldGraph(spec.vertices, spec.edges, spec.radius);
  throw InvalidArgument("unknown graph family '" + spec.family + "'");
}

FieldModel build_model(const FieldGraph& graph, const ModelSpec& spec) {
  if (spec.family != "uniform_mixture") {
    throw InvalidArgument("unknown model family '" + spec.family + "'");
  }
  return make_uniform_mixture_model(graph, spec.lambda, spec.coupling, spec.obs_noise);
}

InitialLaw build_initial(const FieldModel& model, const InitialSpec& spec) {
  if (spec.kind == "uniform") return InitialLaw::uniform(model.state_sizes());
  if (spec.kind == "point") {
    model.require_state(spec.config);
    return InitialLaw::point_mass(model.state_sizes(), spec.config);
  }
  throw InvalidArgument("unknown initial law kind '" + spec.kind + "'");
}

PartitionSchedule build_schedule(const FieldGraph& graph, const ScheduleSpec& spec) {
  std::vector<Partition> parts;
  if (spec.generator == "shifted_cycle") {
    parts = shifted_cycle_partitions(graph, spec.block_sizes, spec.shifts).partitions();
  } else if (spec.generator == "torus_tiling") {
    parts = torus_tiling_partitions(graph, spec.tile_width, spec.tile_height, spec.offsets)
                .partitions();
  } else if (spec.generator == "explicit") {
    if (spec.partitions.empty()) throw InvalidArgument("no partitions given");
    for (const auto& blocks : spec.partitions) {
      parts.emplace_back(graph.vertex_count(), blocks);
    }
  } else {
    throw InvalidArgument("unknown schedule generator '" + spec.generator + "'");
  }
  if (spec.sequence.empty()) return PartitionSchedule(std::move(parts));
  return PartitionSchedule(std::move(parts), spec.sequence);
}

}  // namespace abpf
