#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "abpf/dense.hpp"
#include "abpf/graph.hpp"
#include "abpf/rng.hpp"

namespace abpf {

/// Dynamic random field on a graph with finite per-site alphabets.
///
/// Transition table for site v is indexed [nbr * |X^v| + z], where nbr is the
/// mixed-radix index of x restricted to the sorted neighbourhood N(v) (first
/// neighbour least significant). Observation table for v is [x * |Y^v| + y].
/// Tables hold conditional probabilities; densities are taken relative to
/// the uniform probability measure on each alphabet, so density =
/// probability * alphabet size.
class FieldModel {
 public:
  FieldModel(FieldGraph graph, std::vector<int> state_sizes,
             std::vector<int> observation_sizes,
             std::vector<std::vector<double>> transition,
             std::vector<std::vector<double>> observation);

  const FieldGraph& graph() const noexcept { return graph_; }
  int site_count() const noexcept { return graph_.vertex_count(); }
  const std::vector<int>& state_sizes() const noexcept { return state_sizes_; }
  const std::vector<int>& observation_sizes() const noexcept {
    return observation_sizes_;
  }
  std::size_t state_space_size() const noexcept {
    return configuration_count(state_sizes_);
  }

  const std::vector<double>& transition_table(Vertex v) const {
    return transition_[checked(v)];
  }
  const std::vector<double>& observation_table(Vertex v) const {
    return observation_[checked(v)];
  }

  /// Index of x^{N(v)} into v's transition table (in rows).
  std::size_t neighborhood_index(Vertex v, std::span<const int> x) const;

  /// p^v(x, .) as probabilities over X^v; reads only x^{N(v)}.
  std::span<const double> transition_row(Vertex v,
                                         std::span<const int> x) const {
    const auto r = static_cast<std::size_t>(state_sizes_[v]);
    return {transition_[v].data() + neighborhood_index(v, x) * r, r};
  }
  double transition_probability(Vertex v, std::span<const int> x,
                                int z) const {
    return transition_row(v, x)[static_cast<std::size_t>(z)];
  }
  double transition_site_density(Vertex v, std::span<const int> x,
                                 int z) const {
    return transition_probability(v, x, z) * state_sizes_[v];
  }

  std::span<const double> observation_row(Vertex v, int x) const {
    const auto r = static_cast<std::size_t>(observation_sizes_[v]);
    return {observation_[v].data() + static_cast<std::size_t>(x) * r, r};
  }
  double observation_site_density(Vertex v, int x, int y) const {
    return observation_row(v, x)[static_cast<std::size_t>(y)] *
           observation_sizes_[v];
  }
  /// log g^v(x, y) as a density; -infinity for a zero entry.
  double log_observation_density(Vertex v, int x, int y) const {
    return log_observation_[v][static_cast<std::size_t>(x) *
                                   observation_sizes_[v] +
                               y];
  }

  void require_state(std::span<const int> x) const;
  void require_observation(std::span<const int> y) const;

 private:
  std::size_t checked(Vertex v) const;

  FieldGraph graph_;
  std::vector<int> state_sizes_;
  std::vector<int> observation_sizes_;
  std::vector<std::vector<double>> transition_;
  std::vector<std::vector<double>> observation_;
  std::vector<std::vector<double>> log_observation_;
};

struct MixingReport {
  double epsilon = 0.0;   // largest e with e <= p-density <= 1/e
  double kappa = 0.0;     // same for the observation density
  double epsilon0 = 0.0;  // (1 - 1/(18 D^2))^(1/(2D))
  int delta = 0;
  bool passes_theorem2 = false;  // epsilon > epsilon0
};

struct Trajectory {
  std::vector<Configuration> states;        // X_0 .. X_n
  std::vector<Configuration> observations;  // Y_1 .. Y_n
  std::uint64_t seed = 0;
};

/// Law of X_0: a point mass, an explicit joint table, or a product of site
/// marginals (the only form usable beyond the dense cap besides point mass).
class InitialLaw {
 public:
  static InitialLaw point_mass(std::vector<int> radices, Configuration config);
  static InitialLaw dense(DenseDistribution dist);
  static InitialLaw product(std::vector<std::vector<double>> site_marginals);
  static InitialLaw uniform(std::vector<int> radices);

  const std::vector<int>& radices() const noexcept { return radices_; }
  void sample(RandomStream& rng, std::span<int> out) const;
  /// Joint table; throws CapExceeded above max_configurations.
  DenseDistribution to_dense(std::size_t max_configurations) const;

 private:
  using Product = std::vector<std::vector<double>>;
  std::vector<int> radices_;
  std::variant<Configuration, DenseDistribution, Product> law_;
};

/// p^v = lambda * uniform + (1 - lambda) * base with
/// base(x^{N(v)}, z) proportional to exp(coupling * s(z) * sum_{u in N(v)} s(x^u)),
/// s(0) = -1, s(1) = +1; g^v(x, y) = 1 - obs_noise if y == x else obs_noise.
FieldModel make_uniform_mixture_model(const FieldGraph& graph, double lambda,
                                      double coupling, double obs_noise);

MixingReport check_mixing_bounds(const FieldModel& model);

/// X_0 ~ law, X_k^v ~ p^v(X_{k-1}, .), Y_k^v ~ g^v(X_k^v, .); reproducible
/// from the seed.
Trajectory simulate(const FieldModel& model, const InitialLaw& law,
                    std::size_t horizon, std::uint64_t seed);

/// prod_v p^v(x, z^v) as a density.
double transition_density(const FieldModel& model, std::span<const int> x,
                          std::span<const int> z);

/// prod_v g^v(x^v, y^v) as a density.
double likelihood(const FieldModel& model, std::span<const int> x,
                  std::span<const int> y);

}  // namespace abpf
