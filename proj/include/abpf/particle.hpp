#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "abpf/dense.hpp"
#include "abpf/model.hpp"
#include "abpf/partition.hpp"
#include "abpf/rng.hpp"

namespace abpf {

/// N particles with one normalized weight vector per block. The measure it
/// represents is prod_K sum_i w_i^K delta_{x_i^K}.
class BlockedEnsemble {
 public:
  BlockedEnsemble(std::vector<int> radices, std::vector<int> states,
                  Partition partition,
                  std::vector<std::vector<double>> weights, std::size_t time,
                  std::optional<std::size_t> schedule_index = std::nullopt);

  std::size_t particle_count() const noexcept { return count_; }
  int site_count() const noexcept { return static_cast<int>(radices_.size()); }
  const std::vector<int>& radices() const noexcept { return radices_; }
  /// Particle-major: particle i occupies [i * |V|, (i + 1) * |V|).
  const std::vector<int>& states() const noexcept { return states_; }
  std::span<const int> particle(std::size_t i) const {
    return {states_.data() + i * radices_.size(), radices_.size()};
  }
  const Partition& partition() const noexcept { return partition_; }
  std::span<const double> weights(std::size_t block) const {
    return weights_.at(block);
  }
  const std::vector<std::vector<double>>& all_weights() const noexcept {
    return weights_;
  }
  std::size_t time() const noexcept { return time_; }
  std::optional<std::size_t> schedule_index() const noexcept {
    return schedule_index_;
  }

 private:
  std::vector<int> radices_;
  std::size_t count_ = 0;
  std::vector<int> states_;
  Partition partition_;
  std::vector<std::vector<double>> weights_;
  std::size_t time_ = 0;
  std::optional<std::size_t> schedule_index_;
};

/// N i.i.d. draws from the initial law with uniform weights over a single
/// block. Particle i uses stream (Initialize, time 0, i).
BlockedEnsemble init_ensemble(const InitialLaw& law, std::size_t particles,
                              const ReplicateStreams& streams);

/// N ancestor indices drawn from normalized weights by inverse CDF, one
/// uniform per draw from rng.
std::vector<std::size_t> draw_ancestors(std::span<const double> weights,
                                        std::size_t draws, RandomStream& rng);

/// Product-form resampling for step e.time() + 1: block K of particle i is
/// copied from an ancestor drawn with w^K, independently per block. Block K
/// uses stream (Resample, time, K). Returns particle-major configurations.
std::vector<int> resample_product(const BlockedEnsemble& ensemble,
                                  const ReplicateStreams& streams);

/// Advances each configuration site by site through p^v. Particle i uses
/// stream (Propagate, time, i).
std::vector<int> propagate(const FieldModel& model, std::span<const int> states,
                           std::size_t time, const ReplicateStreams& streams);

/// Normalized per-block weights w_i^K proportional to
/// prod_{v in K} g^v(x_i^v, y^v), computed in log space. Throws
/// DegenerateBlock when every particle has zero weight in a block.
std::vector<std::vector<double>> blockwise_weights(const FieldModel& model,
                                                   std::span<const int> states,
                                                   std::span<const int> y,
                                                   const Partition& partition);

/// One step of the adaptively blocked particle filter.
BlockedEnsemble abpf_step(const FieldModel& model,
                          const BlockedEnsemble& ensemble,
                          std::span<const int> y,
                          const PartitionSchedule& schedule,
                          const ReplicateStreams& streams);

/// One step of the standard bootstrap filter. Requires single-block weights;
/// consumes the same streams as abpf_step under the trivial schedule.
BlockedEnsemble bootstrap_step(const FieldModel& model,
                               const BlockedEnsemble& ensemble,
                               std::span<const int> y,
                               const ReplicateStreams& streams);

/// Ensembles at times 0..n.
std::vector<BlockedEnsemble> abpf_run(const FieldModel& model,
                                      const InitialLaw& law,
                                      const std::vector<Configuration>& observations,
                                      const PartitionSchedule& schedule,
                                      std::size_t particles,
                                      const ReplicateStreams& streams);

std::vector<BlockedEnsemble> bootstrap_run(
    const FieldModel& model, const InitialLaw& law,
    const std::vector<Configuration>& observations, std::size_t particles,
    const ReplicateStreams& streams);

/// The ensemble's marginal on J (sorted, unique) as a dense table: the product
/// over blocks meeting J of the weighted empirical law of the particles on
/// J intersected with K.
DenseDistribution empirical_local_measure(const BlockedEnsemble& ensemble,
                                          const VertexSet& sites);

/// Empirical measure of N i.i.d. draws from rho (stream (Sampling, 0, 0)).
DenseDistribution sampling_operator(const DenseDistribution& rho,
                                    std::size_t particles,
                                    const ReplicateStreams& streams);

/// Long-format dump: state rows (particle, site, value) then weight rows
/// (block, particle, weight).
void write_ensemble_csv(std::ostream& os, const BlockedEnsemble& ensemble);

}  // namespace abpf
