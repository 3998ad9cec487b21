#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "abpf/analysis.hpp"
#include "abpf/bounds.hpp"
#include "abpf/correlation.hpp"
#include "abpf/errors.hpp"
#include "abpf/exact.hpp"
#include "abpf/graph.hpp"
#include "abpf/harness.hpp"
#include "abpf/model.hpp"
#include "abpf/particle.hpp"
#include "abpf/partition.hpp"
#include "abpf/scenario.hpp"

namespace py = pybind11;
using namespace abpf;

namespace {

ReplicateStreams streams_for(std::uint64_t seed, std::uint64_t replicate) {
  return ReplicateStreams{RngPolicy(seed), replicate};
}

py::dict stats_dict(const PartitionStats& st) {
  py::dict d;
  d["partition_count"] = st.partition_count;
  d["cyclic"] = st.cyclic;
  d["beta"] = st.beta;
  d["theta_m"] = st.theta_m;
  d["vartheta_m"] = st.vartheta_m;
  d["delta"] = st.delta;
  d["delta_K"] = st.delta_K;
  d["block_size_max"] = st.block_size_max;
  d["theta_lower"] = st.theta_lower;
  d["vartheta_upper"] = st.vartheta_upper;
  d["infinite_boundary"] = st.infinite_boundary;
  return d;
}

}  // namespace

PYBIND11_MODULE(_abpf, m) {
  m.doc() = "Adaptively blocked particle filter: graphs, partitions, exact and particle filters";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_ValueError);
  py::register_exception<DegenerateEvidence>(m, "DegenerateEvidence", PyExc_RuntimeError);
  py::register_exception<DegenerateBlock>(m, "DegenerateBlock", PyExc_RuntimeError);
  py::register_exception<DegenerateConditioning>(m, "DegenerateConditioning",
                                                 PyExc_RuntimeError);
  py::register_exception<BoundDomainError>(m, "BoundDomainError", PyExc_ValueError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

  py::class_<FieldGraph>(m, "FieldGraph")
      .def(py::init<int, std::vector<std::pair<Vertex, Vertex>>, int>(),
           py::arg("vertex_count"), py::arg("edges"), py::arg("radius"))
      .def_property_readonly("vertex_count", &FieldGraph::vertex_count)
      .def_property_readonly("radius", &FieldGraph::radius)
      .def("distance", &FieldGraph::distance)
      .def("neighborhood", [](const FieldGraph& g, Vertex v) {
        const auto n = g.neighborhood(v);
        return VertexSet(n.begin(), n.end());
      })
      .def("connected", &FieldGraph::connected);
  m.def("build_cycle_graph", &build_cycle_graph, py::arg("n"), py::arg("radius"));
  m.def("build_torus_grid", &build_torus_grid, py::arg("width"), py::arg("height"),
        py::arg("radius"));
  m.def("compute_delta", &compute_delta);

  py::class_<Partition>(m, "Partition")
      .def(py::init<int, std::vector<VertexSet>>(), py::arg("vertex_count"),
           py::arg("blocks"))
      .def_property_readonly("blocks", &Partition::blocks)
      .def("block_of", &Partition::block_of);
  py::class_<PartitionSchedule>(m, "PartitionSchedule")
      .def(py::init<std::vector<Partition>>())
      .def(py::init<std::vector<Partition>, std::vector<std::size_t>>())
      .def_property_readonly("partitions", &PartitionSchedule::partitions)
      .def_property_readonly("cyclic", &PartitionSchedule::cyclic)
      .def("sigma", &PartitionSchedule::sigma);
  m.def("shifted_cycle_partitions", &shifted_cycle_partitions, py::arg("graph"),
        py::arg("block_sizes"), py::arg("shifts"));
  m.def("torus_tiling_partitions", &torus_tiling_partitions, py::arg("graph"),
        py::arg("tile_width"), py::arg("tile_height"), py::arg("offsets"));
  m.def("partition_stats", [](const FieldGraph& g, const PartitionSchedule& s, double beta) {
    return stats_dict(partition_stats(g, s, beta));
  }, py::arg("graph"), py::arg("schedule"), py::arg("beta"));

  py::class_<DenseDistribution>(m, "DenseDistribution")
      .def(py::init<std::vector<int>, std::vector<double>>(), py::arg("radices"),
           py::arg("probs"))
      .def_static("uniform", &DenseDistribution::uniform)
      .def_property_readonly("radices", &DenseDistribution::radices)
      .def_property_readonly("probs", [](const DenseDistribution& d) {
        return std::vector<double>(d.probs().begin(), d.probs().end());
      })
      .def("site_marginal", &DenseDistribution::site_marginal)
      .def("decode", &DenseDistribution::decode)
      .def("encode", [](const DenseDistribution& d, const Configuration& x) {
        return d.encode(x);
      });

  py::class_<FieldModel>(m, "FieldModel")
      .def_property_readonly("site_count", &FieldModel::site_count)
      .def_property_readonly("state_sizes", &FieldModel::state_sizes)
      .def_property_readonly("graph", &FieldModel::graph);
  m.def("make_uniform_mixture_model", &make_uniform_mixture_model, py::arg("graph"),
        py::arg("lam"), py::arg("coupling"), py::arg("obs_noise"));
  m.def("check_mixing_bounds", [](const FieldModel& model) {
    const auto r = check_mixing_bounds(model);
    py::dict d;
    d["epsilon"] = r.epsilon;
    d["kappa"] = r.kappa;
    d["epsilon0"] = r.epsilon0;
    d["delta"] = r.delta;
    d["passes_theorem2"] = r.passes_theorem2;
    return d;
  });
  m.def("simulate", [](const FieldModel& model, std::size_t horizon, std::uint64_t seed) {
    const auto t = simulate(model, InitialLaw::uniform(model.state_sizes()), horizon, seed);
    return py::make_tuple(t.states, t.observations);
  }, py::arg("model"), py::arg("horizon"), py::arg("seed"),
        "Trajectory from a uniform initial law: (states X_0..X_n, observations Y_1..Y_n).");

  m.def("predict", [](const FieldModel& mo, const DenseDistribution& r) { return predict(mo, r); });
  m.def("correct", [](const FieldModel& mo, const DenseDistribution& r, const Configuration& y) {
    return correct(mo, r, y);
  });
  m.def("block_marginal", &block_marginal);
  m.def("blocking", &blocking);
  m.def("exact_filter_run", [](const FieldModel& mo, const DenseDistribution& mu,
                               const std::vector<Configuration>& ys) {
    return exact_filter_run(mo, mu, ys);
  });
  m.def("blocked_filter_run", [](const FieldModel& mo, const DenseDistribution& mu,
                                 const std::vector<Configuration>& ys,
                                 const PartitionSchedule& s) {
    return blocked_filter_run(mo, mu, ys, s);
  });
  m.def("path_oracle", [](const FieldModel& mo, const DenseDistribution& mu,
                          const std::vector<Configuration>& ys) {
    return path_oracle(mo, mu, ys);
  });
  m.def("local_tv", &local_tv);

  py::class_<BlockedEnsemble>(m, "BlockedEnsemble")
      .def_property_readonly("particle_count", &BlockedEnsemble::particle_count)
      .def_property_readonly("time", &BlockedEnsemble::time)
      .def_property_readonly("states", &BlockedEnsemble::states)
      .def_property_readonly("weights", &BlockedEnsemble::all_weights)
      .def_property_readonly("partition", &BlockedEnsemble::partition)
      .def("local_measure", &empirical_local_measure);
  m.def("abpf_run", [](const FieldModel& mo, const std::vector<Configuration>& ys,
                       const PartitionSchedule& s, std::size_t n, std::uint64_t seed,
                       std::uint64_t replicate) {
    return abpf_run(mo, InitialLaw::uniform(mo.state_sizes()), ys, s, n,
                    streams_for(seed, replicate));
  }, py::arg("model"), py::arg("observations"), py::arg("schedule"), py::arg("particles"),
        py::arg("seed"), py::arg("replicate") = 0);
  m.def("bootstrap_run", [](const FieldModel& mo, const std::vector<Configuration>& ys,
                            std::size_t n, std::uint64_t seed, std::uint64_t replicate) {
    return bootstrap_run(mo, InitialLaw::uniform(mo.state_sizes()), ys, n,
                         streams_for(seed, replicate));
  }, py::arg("model"), py::arg("observations"), py::arg("particles"), py::arg("seed"),
        py::arg("replicate") = 0);
  m.def("sampling_operator", [](const DenseDistribution& rho, std::size_t n,
                                std::uint64_t seed, std::uint64_t replicate) {
    return sampling_operator(rho, n, streams_for(seed, replicate));
  }, py::arg("rho"), py::arg("particles"), py::arg("seed"), py::arg("replicate") = 0);

  m.def("rms_norm_estimate", [](const std::vector<DenseDistribution>& runs,
                                const DenseDistribution& reference) {
    return rms_norm_estimate(runs, reference);
  });
  m.def("spatial_spread", [](const std::vector<double>& profile) {
    const auto s = spatial_spread(profile);
    return py::make_tuple(s.max_minus_min, s.std_dev);
  });
  m.def("epsilon_threshold", [](int delta, int constants) {
    return epsilon_threshold(delta, constants == 16 ? BoundConstants::kLemma
                                                    : BoundConstants::kTheorem);
  }, py::arg("delta"), py::arg("constants") = 18);
  m.def("theorem2_beta", [](double eps, int delta, int r, int constants) {
    return theorem2_beta(eps, delta, r, constants == 16 ? BoundConstants::kLemma
                                                        : BoundConstants::kTheorem);
  }, py::arg("epsilon"), py::arg("delta"), py::arg("radius"), py::arg("constants") = 18);
  m.def("theorem1_shape", &theorem1_shape, py::arg("block_size_max"), py::arg("particles"),
        py::arg("alpha"), py::arg("beta"));
  m.def("lemma_minor_holds", &lemma_minor_holds);
  m.def("corr_measure", [](const DenseDistribution& mu, const FieldModel& mo, double beta) {
    const auto r = corr_measure(mu, mo, beta);
    return py::make_tuple(r.coefficients, r.corr, r.argmax);
  });

  m.def("preset_names", &preset_names);
  m.def("preset_json", [](const std::string& name) { return scenario_to_json(preset(name)); });
  m.def("run_scenario_json", [](const std::string& text, const std::string& out_dir,
                                unsigned threads) {
    const auto s = parse_scenario(text);
    const auto r = run_scenario(s, RunOptions{out_dir, threads});
    py::dict d;
    d["digest"] = r.digest;
    d["seed"] = r.seed;
    d["all_ok"] = r.all_ok();
    d["stats"] = stats_dict(r.stats);
    if (r.error_report) {
      d["window_bias"] = r.error_report->window_bias;
      d["window_spread"] = py::make_tuple(r.error_report->window_spread.max_minus_min,
                                          r.error_report->window_spread.std_dev);
    }
    std::vector<std::string> artifacts;
    for (const auto& p : r.artifacts) artifacts.push_back(p.string());
    d["artifacts"] = artifacts;
    return d;
  }, py::arg("scenario_json"), py::arg("out_dir") = "", py::arg("threads") = 1);
}
