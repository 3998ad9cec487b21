#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "abpf/dense.hpp"
#include "abpf/model.hpp"
#include "abpf/partition.hpp"

namespace abpf {

/// Largest joint space the brute-force diagnostics enumerate (6 binary sites).
inline constexpr std::size_t kMaxCorrConfigurations = 64;

/// Law of X_{n-1}^v given X_{n-1}^{V\v} = x^{V\v} and X_n = z: the
/// conditional mu^v_x reweighted by prod_{u in N(v)} p^u(x with x^v = a, z^u).
/// Throws DegenerateConditioning when the conditioning event has
/// probability zero.
std::vector<double> conditional_measure(const DenseDistribution& mu,
                                        const FieldModel& model, Vertex v,
                                        std::span<const int> x,
                                        std::span<const int> z);

/// As conditional_measure with the product restricted to u in N(v) and K
/// (conditioning on X_n^K only).
std::vector<double> block_conditional_measure(const DenseDistribution& mu,
                                              const FieldModel& model, Vertex v,
                                              const VertexSet& block,
                                              std::span<const int> x,
                                              std::span<const int> z);

/// 1/2 sup_z sup_{x, x~ differing only at v'} |mu^v_{x,z} - mu^v_{x~,z}|_1.
double corr_coefficient(const DenseDistribution& mu, const FieldModel& model,
                        Vertex v, Vertex v_prime);

/// Block variant with the max over blocks K of the partition.
double block_corr_coefficient(const DenseDistribution& mu,
                              const FieldModel& model,
                              const Partition& partition, Vertex v,
                              Vertex v_prime);

struct CorrReport {
  /// C[v][v'].
  std::vector<std::vector<double>> coefficients;
  double beta = 0.0;
  /// max_v sum_v' e^{beta d(v, v')} C[v][v'].
  double corr = 0.0;
  Vertex argmax = 0;
  /// Set for the block variant.
  std::optional<Partition> partition;
};

/// corr(mu, beta) by enumeration.
CorrReport corr_measure(const DenseDistribution& mu, const FieldModel& model,
                        double beta);

/// The block-adapted measure for one partition.
CorrReport block_corr_measure(const DenseDistribution& mu,
                              const FieldModel& model,
                              const Partition& partition, double beta);

/// Re-evaluates corr from stored coefficients at another beta.
double corr_from_coefficients(const FieldGraph& graph,
                              const std::vector<std::vector<double>>& c,
                              double beta, Vertex* argmax = nullptr);

}  // namespace abpf
