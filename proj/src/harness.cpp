#include "abpf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "abpf/correlation.hpp"
#include "abpf/errors.hpp"
#include "abpf/exact.hpp"
#include "abpf/particle.hpp"

namespace abpf {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dist_str(Distance d) {
  return is_finite(d) ? std::to_string(d) : std::string("inf");
}

json json_num(double x) {
  if (std::isfinite(x)) return x;
  return num(x);
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::string& header) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << '\n';
  }
  std::ofstream& out() { return out_; }

 private:
  std::ofstream out_;
};

struct Context {
  FieldGraph graph;
  FieldModel model;
  InitialLaw law;
  PartitionSchedule schedule;
};

Context build_context(const Scenario& s) {
  FieldGraph g = build_graph(s.graph);
  FieldModel m = build_model(g, s.model);
  InitialLaw law = build_initial(m, s.initial);
  PartitionSchedule sched = build_schedule(g, s.schedule);
  return Context{std::move(g), std::move(m), std::move(law), std::move(sched)};
}

BoundOptions bound_options(const Scenario& s) {
  BoundOptions o;
  o.constants = s.bounds.constants == 16 ? BoundConstants::kLemma
                                         : BoundConstants::kTheorem;
  o.theta_extra_inverse_m = s.bounds.theta_extra_inverse_m;
  return o;
}

/// Per-time, per-site marginal tables of one particle run.
using LocalSeries = std::vector<std::vector<DenseDistribution>>;

LocalSeries site_marginals(const std::vector<BlockedEnsemble>& run) {
  LocalSeries out;
  out.reserve(run.size());
  for (const auto& e : run) {
    std::vector<DenseDistribution> row;
    row.reserve(static_cast<std::size_t>(e.site_count()));
    for (Vertex v = 0; v < e.site_count(); ++v) {
      row.push_back(empirical_local_measure(e, {v}));
    }
    out.push_back(std::move(row));
  }
  return out;
}

LocalSeries exact_site_marginals(const std::vector<DenseDistribution>& run) {
  LocalSeries out;
  for (const auto& d : run) {
    std::vector<DenseDistribution> row;
    for (Vertex v = 0; v < d.site_count(); ++v) row.push_back(block_marginal(d, {v}));
    out.push_back(std::move(row));
  }
  return out;
}

double site_mean(const DenseDistribution& d) {
  double m = 0.0;
  for (std::size_t a = 0; a < d.size(); ++a) m += static_cast<double>(a) * d[a];
  return m;
}

double l1(const DenseDistribution& a, const DenseDistribution& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

/// Runs fn(r) for r in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
  if (workers <= 1) {
    for (std::size_t r = 0; r < count; ++r) fn(r);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t r = next++; r < count; r = next++) fn(r);
    });
  }
  for (auto& t : pool) t.join();
}

void write_error_rows(std::ostream& os, const std::string& engine,
                      const std::string& replicate, const std::string& metric,
                      const std::vector<std::vector<double>>& series) {
  for (std::size_t k = 0; k < series.size(); ++k) {
    for (std::size_t v = 0; v < series[k].size(); ++v) {
      os << engine << ',' << replicate << ',' << k << ',' << v << ',' << metric
         << ',' << num(series[k][v]) << '\n';
    }
  }
}

void write_window_rows(std::ostream& os, const std::string& engine,
                       std::size_t time, const std::string& metric,
                       const std::vector<double>& profile) {
  for (std::size_t v = 0; v < profile.size(); ++v) {
    os << engine << ",all," << time << ',' << v << ',' << metric << ','
       << num(profile[v]) << '\n';
  }
}

json stats_json(const PartitionStats& st) {
  json j;
  j["partition_count"] = st.partition_count;
  j["cyclic"] = st.cyclic;
  j["beta"] = st.beta;
  j["delta"] = st.delta;
  j["delta_K"] = st.delta_K;
  j["block_size_max"] = st.block_size_max;
  json theta = json::array(), vartheta = json::array();
  for (double x : st.theta_m) theta.push_back(json_num(x));
  for (double x : st.vartheta_m) vartheta.push_back(json_num(x));
  j["theta_m"] = theta;
  j["vartheta_m"] = vartheta;
  j["theta_lower"] = json_num(st.theta_lower);
  j["vartheta_upper"] = json_num(st.vartheta_upper);
  j["infinite_boundary"] = st.infinite_boundary;
  return j;
}

json bounds_json(const BoundReport& b) {
  json j;
  j["epsilon"] = b.epsilon;
  j["epsilon0"] = b.epsilon0;
  j["beta"] = json_num(b.beta);
  j["prefactor"] = b.prefactor;
  j["first_rhs"] = b.first_rhs;
  j["second_rhs"] = b.second_rhs;
  j["epsilon_above_threshold"] = b.epsilon_above_threshold;
  j["cyclic_schedule"] = b.cyclic_schedule;
  j["finite_boundaries"] = b.finite_boundaries;
  j["hypotheses_hold"] = b.hypotheses_hold();
  if (b.variance_shape) j["variance_shape"] = *b.variance_shape;
  return j;
}

void write_stats_csv(const fs::path& path, const PartitionStats& st) {
  CsvFile f(path, "site,metric,value");
  auto& os = f.out();
  for (std::size_t v = 0; v < st.theta_m.size(); ++v) {
    os << v << ",theta_m," << num(st.theta_m[v]) << '\n';
    os << v << ",vartheta_m," << num(st.vartheta_m[v]) << '\n';
    os << v << ",delta_d," << dist_str(st.delta_d[v]) << '\n';
    os << v << ",nabla_d," << dist_str(st.nabla_d[v]) << '\n';
    for (std::size_t j = 0; j < st.boundary_distance.size(); ++j) {
      os << v << ",boundary_distance_" << j << ','
         << dist_str(st.boundary_distance[j][v]) << '\n';
    }
  }
}

void write_bounds_csv(const fs::path& path, const BoundReport& b,
                      const std::vector<double>* window_bias) {
  CsvFile f(path, "site,metric,value");
  auto& os = f.out();
  for (std::size_t v = 0; v < b.first_rhs.size(); ++v) {
    if (window_bias != nullptr) os << v << ",window_bias," << num((*window_bias)[v]) << '\n';
    os << v << ",first_rhs," << num(b.first_rhs[v]) << '\n';
    os << v << ",second_rhs," << num(b.second_rhs[v]) << '\n';
  }
}

void print_stats(std::ostream& os, const PartitionStats& st) {
  os << "partitions m = " << st.partition_count
     << (st.cyclic ? " (cyclic)" : " (explicit sequence)") << ", Delta = " << st.delta
     << ", Delta_K = " << st.delta_K << ", |K|_inf = " << st.block_size_max
     << ", beta = " << st.beta << '\n';
  os << std::left << std::setw(6) << "site" << std::setw(14) << "theta_m"
     << std::setw(14) << "vartheta_m" << std::setw(9) << "Delta_d" << std::setw(9)
     << "nabla_d" << "d(v, dK_j(v))\n";
  for (std::size_t v = 0; v < st.theta_m.size(); ++v) {
    os << std::setw(6) << v << std::setw(14) << st.theta_m[v] << std::setw(14)
       << st.vartheta_m[v] << std::setw(9) << dist_str(st.delta_d[v]) << std::setw(9)
       << dist_str(st.nabla_d[v]);
    for (std::size_t j = 0; j < st.boundary_distance.size(); ++j) {
      os << (j ? " " : "") << dist_str(st.boundary_distance[j][v]);
    }
    os << '\n';
  }
  os << std::right;
}

}  // namespace

double statistics_beta(const Scenario& scenario, const FieldModel& model) {
  const MixingReport mix = check_mixing_bounds(model);
  try {
    const double b = theorem2_beta(mix.epsilon, mix.delta, model.graph().radius(),
                                   bound_options(scenario).constants);
    if (std::isfinite(b)) return b;
  } catch (const BoundDomainError&) {
  }
  return scenario.bounds.fallback_beta;
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  validate_scenario(scenario);
  Context ctx = build_context(scenario);
  const auto& model = ctx.model;
  const int sites = model.site_count();
  const std::size_t horizon = scenario.horizon;
  const bool write = !options.out_dir.empty();
  if (write) fs::create_directories(options.out_dir);

  RunResult res;
  res.digest = scenario_digest(scenario);
  res.seed = scenario.seed;
  res.trajectory_seed = scenario.seed;
  res.stats = partition_stats(ctx.graph, ctx.schedule, statistics_beta(scenario, model));

  const Trajectory traj = simulate(model, ctx.law, horizon, res.trajectory_seed);
  const auto& ys = traj.observations;

  std::mutex artifact_mutex;
  auto add_artifact = [&](const fs::path& p) {
    std::lock_guard<std::mutex> lock(artifact_mutex);
    res.artifacts.push_back(p);
  };

  if (write) {
    const auto path = options.out_dir / "trajectory.csv";
    CsvFile f(path, "time,site,state,observation");
    for (std::size_t k = 0; k <= horizon; ++k) {
      for (int v = 0; v < sites; ++v) {
        f.out() << k << ',' << v << ',' << traj.states[k][static_cast<std::size_t>(v)] << ',';
        if (k > 0) f.out() << ys[k - 1][static_cast<std::size_t>(v)];
        f.out() << '\n';
      }
    }
    add_artifact(path);
  }

  using Clock = std::chrono::steady_clock;
  auto seconds_since = [](Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  const ExactLimits limits{scenario.dense_cap, ExactLimits{}.max_paths};

  // Dense references.
  std::optional<std::vector<DenseDistribution>> exact_run, blocked_run;
  std::vector<std::optional<std::vector<DenseDistribution>>> fixed_runs;
  std::optional<DenseDistribution> mu;
  auto dense_engine = [&](const std::string& name, auto&& body) {
    EngineOutcome out{name, 0, true, {}, 0.0};
    const auto t0 = Clock::now();
    try {
      if (!mu) mu = ctx.law.to_dense(scenario.dense_cap);
      body();
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
    out.seconds = seconds_since(t0);
    res.engines.push_back(out);
  };
  if (scenario.engines.exact) {
    dense_engine("exact", [&] { exact_run = exact_filter_run(model, *mu, ys, limits); });
  }
  if (scenario.engines.blocked_exact) {
    dense_engine("blocked_exact", [&] {
      blocked_run = blocked_filter_run(model, *mu, ys, ctx.schedule, limits);
    });
  }
  if (scenario.compare_fixed) {
    fixed_runs.resize(ctx.schedule.size());
    for (std::size_t j = 0; j < ctx.schedule.size(); ++j) {
      dense_engine("blocked_exact_fixed" + std::to_string(j), [&] {
        fixed_runs[j] = blocked_filter_run(model, *mu, ys,
                                           PartitionSchedule({ctx.schedule.partition(j)}),
                                           limits);
      });
    }
  }

  std::optional<CsvFile> errors;
  if (write) {
    errors.emplace(options.out_dir / "errors.csv", "engine,replicate,time,site,metric,value");
    add_artifact(options.out_dir / "errors.csv");
  }
  std::optional<LocalSeries> exact_local, blocked_local;
  if (exact_run) exact_local = exact_site_marginals(*exact_run);
  if (blocked_run) blocked_local = exact_site_marginals(*blocked_run);

  if (exact_run && blocked_run) {
    res.error_report = bias_profile(*exact_run, *blocked_run, scenario.window);
    if (errors) {
      write_error_rows(errors->out(), "blocked_exact", "all", "bias", res.error_report->bias);
      write_window_rows(errors->out(), "blocked_exact", horizon, "window_bias",
                        res.error_report->window_bias);
    }
  }
  if (exact_run) {
    for (std::size_t j = 0; j < fixed_runs.size(); ++j) {
      if (!fixed_runs[j]) continue;
      res.fixed_reports.push_back(bias_profile(*exact_run, *fixed_runs[j], scenario.window));
      if (errors) {
        const std::string name = "blocked_exact_fixed" + std::to_string(j);
        write_error_rows(errors->out(), name, "all", "bias", res.fixed_reports.back().bias);
        write_window_rows(errors->out(), name, horizon, "window_bias",
                          res.fixed_reports.back().window_bias);
      }
    }
  }

  // Particle engines.
  const PartitionSchedule fixed_schedule({ctx.schedule.partition(scenario.blocked_pf_partition)});
  const std::size_t largest_n =
      scenario.particles.empty()
          ? 0
          : *std::max_element(scenario.particles.begin(), scenario.particles.end());
  struct ParticleEngine {
    std::string name;
    bool enabled;
    const std::vector<DenseDistribution>* blocked_reference;
  };
  std::optional<std::vector<DenseDistribution>> fixed_reference;
  if (!fixed_runs.empty() && fixed_runs[scenario.blocked_pf_partition]) {
    fixed_reference = fixed_runs[scenario.blocked_pf_partition];
  }
  const std::vector<ParticleEngine> particle_engines = {
      {"bootstrap", scenario.engines.bootstrap, nullptr},
      {"blocked_pf", scenario.engines.blocked_pf,
       fixed_reference ? &*fixed_reference : nullptr},
      {"abpf", scenario.engines.abpf, blocked_run ? &*blocked_run : nullptr},
  };
  for (const auto& pe : particle_engines) {
    if (!pe.enabled) continue;
    for (std::size_t n_particles : scenario.particles) {
      EngineOutcome out{pe.name, n_particles, true, {}, 0.0};
      const auto t0 = Clock::now();
      std::vector<std::optional<LocalSeries>> local(scenario.replicates);
      std::vector<std::string> failures(scenario.replicates);
      parallel_for(scenario.replicates, options.threads, [&](std::size_t r) {
        const ReplicateStreams streams{RngPolicy(scenario.seed), r};
        try {
          std::vector<BlockedEnsemble> run;
          if (pe.name == "bootstrap") {
            run = bootstrap_run(model, ctx.law, ys, n_particles, streams);
          } else if (pe.name == "blocked_pf") {
            run = abpf_run(model, ctx.law, ys, fixed_schedule, n_particles, streams);
          } else {
            run = abpf_run(model, ctx.law, ys, ctx.schedule, n_particles, streams);
          }
          local[r] = site_marginals(run);
        } catch (const std::exception& e) {
          failures[r] = e.what();
        }
      });
      out.seconds = seconds_since(t0);
      for (std::size_t r = 0; r < failures.size(); ++r) {
        if (!failures[r].empty()) {
          out.ok = false;
          out.error = "replicate " + std::to_string(r) + ": " + failures[r];
          break;
        }
      }
      const std::string label = pe.name + "_N" + std::to_string(n_particles);
      if (out.ok) {
        auto rms_against = [&](const LocalSeries& ref) {
          std::vector<std::vector<double>> series(
              horizon + 1, std::vector<double>(static_cast<std::size_t>(sites)));
          std::vector<DenseDistribution> tables;
          for (std::size_t k = 0; k <= horizon; ++k) {
            for (std::size_t v = 0; v < static_cast<std::size_t>(sites); ++v) {
              tables.clear();
              for (const auto& rep : local) tables.push_back((*rep)[k][v]);
              series[k][v] = rms_norm_estimate(tables, ref[k][v]);
            }
          }
          return series;
        };
        if (errors) {
          for (std::size_t r = 0; r < local.size(); ++r) {
            const auto& rep = *local[r];
            std::vector<std::vector<double>> means(horizon + 1), l1s;
            for (std::size_t k = 0; k <= horizon; ++k) {
              for (const auto& d : rep[k]) means[k].push_back(site_mean(d));
            }
            write_error_rows(errors->out(), label, std::to_string(r), "site_mean", means);
            if (exact_local) {
              l1s.assign(horizon + 1, {});
              for (std::size_t k = 0; k <= horizon; ++k) {
                for (std::size_t v = 0; v < rep[k].size(); ++v) {
                  l1s[k].push_back(l1(rep[k][v], (*exact_local)[k][v]));
                }
              }
              write_error_rows(errors->out(), label, std::to_string(r), "l1_vs_exact", l1s);
            }
          }
        }
        std::vector<std::vector<double>> total, variance;
        if (exact_local) {
          total = rms_against(*exact_local);
          if (errors) write_error_rows(errors->out(), label, "all", "rms_vs_exact", total);
        }
        if (pe.blocked_reference) {
          variance = rms_against(exact_site_marginals(*pe.blocked_reference));
          if (errors) write_error_rows(errors->out(), label, "all", "rms_vs_blocked", variance);
        }
        if (pe.name == "abpf" && n_particles == largest_n && res.error_report) {
          res.error_report->total_error = std::move(total);
          res.error_report->variance_error = std::move(variance);
        }
      }
      res.engines.push_back(out);
    }
  }

  // Bounds.
  try {
    const MixingReport mix = check_mixing_bounds(model);
    BoundReport b = theorem2_bound(res.stats, mix.epsilon, mix.delta,
                                   ctx.graph.radius(), bound_options(scenario));
    if (largest_n > 0) {
      b.variance_shape = theorem1_shape(res.stats.block_size_max, largest_n,
                                        scenario.bounds.variance_alpha,
                                        scenario.bounds.variance_beta);
    }
    res.bounds = std::move(b);
  } catch (const std::exception& e) {
    res.bounds_error = e.what();
  }

  if (write) {
    errors.reset();
    write_stats_csv(options.out_dir / "stats.csv", res.stats);
    add_artifact(options.out_dir / "stats.csv");
    if (res.bounds) {
      write_bounds_csv(options.out_dir / "bounds.csv", *res.bounds,
                       res.error_report ? &res.error_report->window_bias : nullptr);
      add_artifact(options.out_dir / "bounds.csv");
    }

    json summary;
    summary["scenario"] = json::parse(scenario_to_json(scenario));
    summary["digest"] = res.digest;
    summary["seed"] = res.seed;
    summary["trajectory_seed"] = res.trajectory_seed;
    json engines = json::array();
    for (const auto& e : res.engines) {
      json je = {{"engine", e.engine}, {"ok", e.ok}, {"seconds", e.seconds}};
      if (e.particles) je["particles"] = e.particles;
      if (!e.ok) je["error"] = e.error;
      engines.push_back(je);
    }
    summary["engines"] = engines;
    summary["stats"] = stats_json(res.stats);
    if (res.bounds) summary["bounds"] = bounds_json(*res.bounds);
    else summary["bounds_error"] = res.bounds_error;
    if (res.error_report) {
      summary["window_bias"] = res.error_report->window_bias;
      summary["window_spread"] = {
          {"max_minus_min", res.error_report->window_spread.max_minus_min},
          {"std_dev", res.error_report->window_spread.std_dev}};
    }
    json fixed = json::array();
    for (const auto& r : res.fixed_reports) {
      fixed.push_back({{"window_bias", r.window_bias},
                       {"max_minus_min", r.window_spread.max_minus_min},
                       {"std_dev", r.window_spread.std_dev}});
    }
    if (!fixed.empty()) summary["fixed_partitions"] = fixed;
    add_artifact(options.out_dir / "summary.json");
    json artifacts = json::array();
    for (const auto& p : res.artifacts) artifacts.push_back(p.filename().string());
    summary["artifacts"] = artifacts;
    std::ofstream(options.out_dir / "summary.json", std::ios::binary) << summary.dump(2) << '\n';
  }
  return res;
}

PartitionStats cmd_stats(const Scenario& scenario, const RunOptions& options,
                         std::ostream& console) {
  validate_scenario(scenario);
  Context ctx = build_context(scenario);
  const auto st = partition_stats(ctx.graph, ctx.schedule,
                                  statistics_beta(scenario, ctx.model));
  print_stats(console, st);
  if (!options.out_dir.empty()) {
    fs::create_directories(options.out_dir);
    write_stats_csv(options.out_dir / "stats.csv", st);
  }
  return st;
}

BoundReport cmd_bounds(const Scenario& scenario, const RunOptions& options,
                       std::ostream& console) {
  validate_scenario(scenario);
  Context ctx = build_context(scenario);
  const MixingReport mix = check_mixing_bounds(ctx.model);
  console << "epsilon = " << mix.epsilon << ", kappa = " << mix.kappa
          << ", Delta = " << mix.delta << ", epsilon0 = " << mix.epsilon0
          << (mix.passes_theorem2 ? " (above threshold)" : " (NOT above threshold)")
          << '\n';
  const auto st = partition_stats(ctx.graph, ctx.schedule,
                                  statistics_beta(scenario, ctx.model));
  BoundReport b = theorem2_bound(st, mix.epsilon, mix.delta, ctx.graph.radius(),
                                 bound_options(scenario));
  if (!scenario.particles.empty()) {
    b.variance_shape = theorem1_shape(
        st.block_size_max,
        *std::max_element(scenario.particles.begin(), scenario.particles.end()),
        scenario.bounds.variance_alpha, scenario.bounds.variance_beta);
  }
  console << "beta = " << b.beta << ", prefactor = " << b.prefactor
          << ", hypotheses hold: " << (b.hypotheses_hold() ? "yes" : "no") << '\n';
  console << std::left << std::setw(6) << "site" << std::setw(16) << "first_rhs"
          << "second_rhs\n";
  for (std::size_t v = 0; v < b.first_rhs.size(); ++v) {
    console << std::setw(6) << v << std::setw(16) << b.first_rhs[v] << b.second_rhs[v]
            << '\n';
  }
  console << std::right;
  if (b.variance_shape) {
    console << "variance shape (alpha |K| e^{beta |K|} / sqrt N) = " << *b.variance_shape
            << '\n';
  }
  if (!options.out_dir.empty()) {
    fs::create_directories(options.out_dir);
    write_bounds_csv(options.out_dir / "bounds.csv", b, nullptr);
  }
  return b;
}

void cmd_diagnose_corr(const Scenario& scenario, const RunOptions& options,
                       std::ostream& console) {
  validate_scenario(scenario);
  Context ctx = build_context(scenario);
  const auto& model = ctx.model;
  const double beta = statistics_beta(scenario, model);
  std::vector<std::pair<std::string, DenseDistribution>> measures;
  measures.emplace_back("initial", ctx.law.to_dense(kMaxCorrConfigurations));
  {
    const Trajectory traj = simulate(model, ctx.law, scenario.horizon, scenario.seed);
    const auto run = blocked_filter_run(model, measures.front().second,
                                        traj.observations, ctx.schedule);
    measures.emplace_back("blocked_final", run.back());
  }
  std::optional<CsvFile> csv;
  if (!options.out_dir.empty()) {
    fs::create_directories(options.out_dir);
    csv.emplace(options.out_dir / "corr.csv", "measure,table,v,v_prime,value");
  }
  const int n = model.site_count();
  auto emit = [&](const std::string& measure, const std::string& table,
                  const CorrReport& rep) {
    console << measure << " / " << table << ": corr = " << rep.corr
            << " (beta = " << beta << ", argmax v = " << rep.argmax << ")\n";
    for (int v = 0; v < n; ++v) {
      for (int w = 0; w < n; ++w) {
        const double c = rep.coefficients[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
        console << (w ? " " : "  ") << std::setw(12) << c;
        if (csv) {
          csv->out() << measure << ',' << table << ',' << v << ',' << w << ',' << num(c)
                     << '\n';
        }
      }
      console << '\n';
    }
    if (csv) csv->out() << measure << ',' << table << ",,,"
                        << num(rep.corr) << '\n';
  };
  for (const auto& [label, mu] : measures) {
    emit(label, "C", corr_measure(mu, model, beta));
    for (std::size_t j = 0; j < ctx.schedule.size(); ++j) {
      emit(label, "C_block" + std::to_string(j),
           block_corr_measure(mu, model, ctx.schedule.partition(j), beta));
    }
  }
}

}  // namespace abpf
