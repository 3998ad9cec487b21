#include "abpf/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "abpf/bounds.hpp"
#include "abpf/errors.hpp"

namespace abpf {

namespace {

constexpr double kRowTolerance = 1e-12;

void check_rows(const std::vector<double>& table, std::size_t row_width,
                const std::string& what) {
  for (std::size_t start = 0; start < table.size(); start += row_width) {
    double sum = 0.0;
    for (std::size_t i = start; i < start + row_width; ++i) {
      if (!(table[i] >= 0.0) || !std::isfinite(table[i])) {
        throw InvalidArgument(what + " has a negative or non-finite entry");
      }
      sum += table[i];
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw InvalidArgument(what + " row " + std::to_string(start / row_width) +
                            " sums to " + std::to_string(sum));
    }
  }
}

}  // namespace

FieldModel::FieldModel(FieldGraph graph, std::vector<int> state_sizes,
                       std::vector<int> observation_sizes,
                       std::vector<std::vector<double>> transition,
                       std::vector<std::vector<double>> observation)
    : graph_(std::move(graph)),
      state_sizes_(std::move(state_sizes)),
      observation_sizes_(std::move(observation_sizes)),
      transition_(std::move(transition)),
      observation_(std::move(observation)) {
  const auto n = static_cast<std::size_t>(graph_.vertex_count());
  if (state_sizes_.size() != n || observation_sizes_.size() != n ||
      transition_.size() != n || observation_.size() != n) {
    throw InvalidArgument("model needs one alphabet and one table per site");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (state_sizes_[v] < 1 || observation_sizes_[v] < 1) {
      throw InvalidArgument("alphabet sizes must be positive");
    }
  }
  log_observation_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t rows = 1;
    for (Vertex u : graph_.neighborhood(static_cast<Vertex>(v))) {
      rows *= static_cast<std::size_t>(state_sizes_[u]);
    }
    const auto zs = static_cast<std::size_t>(state_sizes_[v]);
    const auto ys = static_cast<std::size_t>(observation_sizes_[v]);
    const std::string site = " of site " + std::to_string(v);
    if (transition_[v].size() != rows * zs) {
      throw InvalidArgument("transition table" + site + " has " +
                            std::to_string(transition_[v].size()) +
                            " entries, expected " + std::to_string(rows * zs));
    }
    if (observation_[v].size() != zs * ys) {
      throw InvalidArgument("observation table" + site + " has wrong size");
    }
    check_rows(transition_[v], zs, "transition table" + site);
    check_rows(observation_[v], ys, "observation table" + site);
    log_observation_[v].resize(observation_[v].size());
    for (std::size_t i = 0; i < observation_[v].size(); ++i) {
      log_observation_[v][i] =
          observation_[v][i] > 0.0
              ? std::log(observation_[v][i] * static_cast<double>(ys))
              : -std::numeric_limits<double>::infinity();
    }
  }
}

std::size_t FieldModel::checked(Vertex v) const {
  graph_.require_vertex(v);
  return static_cast<std::size_t>(v);
}

std::size_t FieldModel::neighborhood_index(Vertex v,
                                           std::span<const int> x) const {
  const auto nbrs = graph_.neighborhood(v);
  std::size_t index = 0;
  for (std::size_t i = nbrs.size(); i-- > 0;) {
    const Vertex u = nbrs[i];
    index = index * static_cast<std::size_t>(state_sizes_[u]) +
            static_cast<std::size_t>(x[u]);
  }
  return index;
}

void FieldModel::require_state(std::span<const int> x) const {
  if (x.size() != state_sizes_.size()) {
    throw InvalidArgument("state configuration has wrong number of sites");
  }
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] < 0 || x[v] >= state_sizes_[v]) {
      throw InvalidArgument("state value out of alphabet at site " +
                            std::to_string(v));
    }
  }
}

void FieldModel::require_observation(std::span<const int> y) const {
  if (y.size() != observation_sizes_.size()) {
    throw InvalidArgument("observation configuration has wrong number of sites");
  }
  for (std::size_t v = 0; v < y.size(); ++v) {
    if (y[v] < 0 || y[v] >= observation_sizes_[v]) {
      throw InvalidArgument("observation value out of alphabet at site " +
                            std::to_string(v));
    }
  }
}

InitialLaw InitialLaw::point_mass(std::vector<int> radices,
                                  Configuration config) {
  if (config.size() != radices.size()) {
    throw InvalidArgument("point mass has wrong number of sites");
  }
  for (std::size_t v = 0; v < config.size(); ++v) {
    if (config[v] < 0 || config[v] >= radices[v]) {
      throw InvalidArgument("point mass value out of alphabet at site " +
                            std::to_string(v));
    }
  }
  InitialLaw law;
  law.radices_ = std::move(radices);
  law.law_ = std::move(config);
  return law;
}

InitialLaw InitialLaw::dense(DenseDistribution dist) {
  InitialLaw law;
  law.radices_ = dist.radices();
  law.law_ = std::move(dist);
  return law;
}

InitialLaw InitialLaw::product(std::vector<std::vector<double>> marginals) {
  InitialLaw law;
  for (const auto& m : marginals) {
    if (m.empty()) throw InvalidArgument("empty site marginal");
    double sum = 0.0;
    for (double p : m) {
      if (!(p >= 0.0)) throw InvalidArgument("negative site marginal entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
      throw InvalidArgument("site marginal does not sum to 1");
    }
    law.radices_.push_back(static_cast<int>(m.size()));
  }
  law.law_ = std::move(marginals);
  return law;
}

InitialLaw InitialLaw::uniform(std::vector<int> radices) {
  std::vector<std::vector<double>> marginals;
  for (int r : radices) {
    if (r < 1) throw InvalidArgument("alphabet sizes must be positive");
    marginals.emplace_back(static_cast<std::size_t>(r), 1.0 / r);
  }
  return product(std::move(marginals));
}

void InitialLaw::sample(RandomStream& rng, std::span<int> out) const {
  if (const auto* point = std::get_if<Configuration>(&law_)) {
    std::copy(point->begin(), point->end(), out.begin());
  } else if (const auto* dist = std::get_if<DenseDistribution>(&law_)) {
    dist->decode_into(sample_categorical(dist->probs(), rng.uniform()), out);
  } else {
    const auto& marginals = std::get<Product>(law_);
    for (std::size_t v = 0; v < marginals.size(); ++v) {
      out[v] = static_cast<int>(sample_categorical(marginals[v], rng.uniform()));
    }
  }
}

DenseDistribution InitialLaw::to_dense(std::size_t max_configurations) const {
  const std::size_t size = configuration_count(radices_);
  if (size > max_configurations) {
    throw CapExceeded("initial law table", size, max_configurations);
  }
  if (const auto* point = std::get_if<Configuration>(&law_)) {
    return DenseDistribution::point_mass(radices_, *point);
  }
  if (const auto* dist = std::get_if<DenseDistribution>(&law_)) return *dist;
  const auto& marginals = std::get<Product>(law_);
  std::vector<double> probs(size);
  Configuration x(radices_.size());
  auto table = DenseDistribution::uniform(radices_);
  for (std::size_t i = 0; i < size; ++i) {
    table.decode_into(i, x);
    double p = 1.0;
    for (std::size_t v = 0; v < x.size(); ++v) p *= marginals[v][x[v]];
    probs[i] = p;
  }
  return DenseDistribution::from_weights(radices_, std::move(probs));
}

FieldModel make_uniform_mixture_model(const FieldGraph& graph, double lambda,
                                      double coupling, double obs_noise) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("mixture weight lambda must lie in [0, 1]");
  }
  if (!std::isfinite(coupling)) throw InvalidArgument("coupling must be finite");
  if (!(obs_noise > 0.0 && obs_noise <= 0.5)) {
    throw InvalidArgument("observation noise must lie in (0, 0.5]");
  }
  const int n = graph.vertex_count();
  std::vector<std::vector<double>> transition(n), observation(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto nbrs = graph.neighborhood(v);
    const std::size_t rows = std::size_t{1} << nbrs.size();
    auto& table = transition[v];
    table.resize(rows * 2);
    for (std::size_t row = 0; row < rows; ++row) {
      double spin_sum = 0.0;
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        spin_sum += ((row >> i) & 1U) ? 1.0 : -1.0;
      }
      // Logistic form of exp(c*S) / (exp(c*S) + exp(-c*S)).
      const double up = 1.0 / (1.0 + std::exp(-2.0 * coupling * spin_sum));
      const double base[2] = {1.0 - up, up};
      for (int z = 0; z < 2; ++z) {
        table[row * 2 + z] = 0.5 * lambda + (1.0 - lambda) * base[z];
      }
    }
    observation[v] = {1.0 - obs_noise, obs_noise, obs_noise, 1.0 - obs_noise};
  }
  return FieldModel(graph, std::vector<int>(n, 2), std::vector<int>(n, 2),
                    std::move(transition), std::move(observation));
}

namespace {

double mixing_constant(const std::vector<std::vector<double>>& tables,
                       const std::vector<int>& reference_sizes) {
  double eps = 1.0;
  for (std::size_t v = 0; v < tables.size(); ++v) {
    for (double p : tables[v]) {
      const double density = p * reference_sizes[v];
      if (density <= 0.0) return 0.0;
      eps = std::min({eps, density, 1.0 / density});
    }
  }
  return eps;
}

}  // namespace

MixingReport check_mixing_bounds(const FieldModel& model) {
  MixingReport report;
  std::vector<std::vector<double>> transition, observation;
  for (Vertex v = 0; v < model.site_count(); ++v) {
    transition.push_back(model.transition_table(v));
    observation.push_back(model.observation_table(v));
  }
  report.epsilon = mixing_constant(transition, model.state_sizes());
  report.kappa = mixing_constant(observation, model.observation_sizes());
  report.delta = compute_delta(model.graph());
  report.epsilon0 = epsilon_threshold(report.delta, BoundConstants::kTheorem);
  report.passes_theorem2 = report.epsilon > report.epsilon0;
  return report;
}

Trajectory simulate(const FieldModel& model, const InitialLaw& law,
                    std::size_t horizon, std::uint64_t seed) {
  if (law.radices() != model.state_sizes()) {
    throw InvalidArgument("initial law alphabets do not match the model");
  }
  const RngPolicy policy(seed);
  const auto n = static_cast<std::size_t>(model.site_count());
  Trajectory traj;
  traj.seed = seed;
  traj.states.reserve(horizon + 1);
  traj.observations.reserve(horizon);

  Configuration x(n);
  auto init = policy.stream(StreamPurpose::kSimulateState, 0, 0, 0);
  law.sample(init, x);
  traj.states.push_back(x);
  for (std::size_t k = 1; k <= horizon; ++k) {
    auto state_rng = policy.stream(StreamPurpose::kSimulateState, 0, k, 0);
    auto obs_rng = policy.stream(StreamPurpose::kSimulateObservation, 0, k, 0);
    const Configuration& prev = traj.states.back();
    Configuration next(n), y(n);
    for (std::size_t v = 0; v < n; ++v) {
      next[v] = static_cast<int>(sample_categorical(
          model.transition_row(static_cast<Vertex>(v), prev), state_rng.uniform()));
    }
    for (std::size_t v = 0; v < n; ++v) {
      y[v] = static_cast<int>(sample_categorical(
          model.observation_row(static_cast<Vertex>(v), next[v]), obs_rng.uniform()));
    }
    traj.states.push_back(std::move(next));
    traj.observations.push_back(std::move(y));
  }
  return traj;
}

double transition_density(const FieldModel& model, std::span<const int> x,
                          std::span<const int> z) {
  model.require_state(x);
  model.require_state(z);
  double d = 1.0;
  for (Vertex v = 0; v < model.site_count(); ++v) {
    d *= model.transition_site_density(v, x, z[v]);
  }
  return d;
}

double likelihood(const FieldModel& model, std::span<const int> x,
                  std::span<const int> y) {
  model.require_state(x);
  model.require_observation(y);
  double d = 1.0;
  for (Vertex v = 0; v < model.site_count(); ++v) {
    d *= model.observation_site_density(v, x[v], y[v]);
  }
  return d;
}

}  // namespace abpf
