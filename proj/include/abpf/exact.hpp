#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "abpf/dense.hpp"
#include "abpf/graph.hpp"
#include "abpf/model.hpp"
#include "abpf/partition.hpp"

namespace abpf {

struct ExactLimits {
  /// Largest joint state space handled by dense tables.
  std::size_t max_configurations = 4096;
  /// Largest number of state paths the path-sum oracle will enumerate.
  std::size_t max_paths = 10'000'000;
};

/// rho P: sum_x rho(x) prod_v p^v(x, .). Warns when the raw mass drifts
/// from 1 by more than 1e-8, then renormalizes.
DenseDistribution predict(const FieldModel& model, const DenseDistribution& rho,
                          const ExactLimits& limits = {});

/// C_n rho: reweights by prod_v g^v(x^v, y^v). Throws DegenerateEvidence when
/// the evidence is zero.
DenseDistribution correct(const FieldModel& model, const DenseDistribution& rho,
                          std::span<const int> y);

/// Marginal on J (sorted, unique). Output sites follow J's order.
DenseDistribution block_marginal(const DenseDistribution& rho,
                                 const VertexSet& sites);

/// Product of the block marginals of rho over the partition.
DenseDistribution blocking(const DenseDistribution& rho,
                           const Partition& partition);

/// pi_0 = mu, pi_k = C_k P pi_{k-1}; returns pi_0 .. pi_n.
std::vector<DenseDistribution> exact_filter_run(
    const FieldModel& model, const DenseDistribution& mu,
    const std::vector<Configuration>& observations,
    const ExactLimits& limits = {});

/// tilde pi_k = C_k B(K_sigma(k)) P tilde pi_{k-1}; returns tilde pi_0 .. n.
std::vector<DenseDistribution> blocked_filter_run(
    const FieldModel& model, const DenseDistribution& mu,
    const std::vector<Configuration>& observations,
    const PartitionSchedule& schedule, const ExactLimits& limits = {});

/// L1 distance between the J-marginals; the local norm of deterministic
/// measures reduces to this.
double local_tv(const DenseDistribution& a, const DenseDistribution& b,
                const VertexSet& sites);

/// Filter by brute-force summation over all state paths x_0..x_k:
/// pi_k(x) proportional to the sum over paths ending at x of
/// mu(x_0) prod_t p(x_{t-1}, x_t) g(x_t, y_t). Independent of the recursion.
std::vector<DenseDistribution> path_oracle(
    const FieldModel& model, const DenseDistribution& mu,
    const std::vector<Configuration>& observations,
    const ExactLimits& limits = {});

/// Header index,x0,..,x{n-1},prob then one row per configuration.
void write_distribution_csv(std::ostream& os, const DenseDistribution& rho);

/// Throws InvalidArgument unless the graph is connected.
void require_connected(const FieldGraph& graph);

}  // namespace abpf
