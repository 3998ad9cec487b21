#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "abpf/graph.hpp"

namespace abpf {

/// Disjoint cover of the vertex set by non-empty blocks. Block order is
/// preserved from construction; vertices inside each block are sorted.
class Partition {
 public:
  Partition(int vertex_count, std::vector<VertexSet> blocks);

  /// The trivial partition {V}.
  static Partition single_block(int vertex_count);

  int vertex_count() const noexcept {
    return static_cast<int>(block_of_.size());
  }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
  const VertexSet& block(std::size_t k) const;
  std::size_t block_of(Vertex v) const;
  std::size_t max_block_size() const noexcept;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<VertexSet> blocks_;
  std::vector<std::size_t> block_of_;
};

/// m partitions plus a switching signal sigma. sigma(s) = sequence[s mod L];
/// the cyclic signal sigma(s) = s mod m is the identity sequence.
class PartitionSchedule {
 public:
  /// Cyclic schedule over the given partitions.
  explicit PartitionSchedule(std::vector<Partition> partitions);
  PartitionSchedule(std::vector<Partition> partitions,
                    std::vector<std::size_t> sequence);

  /// Single-partition {V} schedule.
  static PartitionSchedule trivial(int vertex_count);

  std::size_t size() const noexcept { return partitions_.size(); }
  const std::vector<Partition>& partitions() const noexcept {
    return partitions_;
  }
  const Partition& partition(std::size_t j) const;
  const std::vector<std::size_t>& sequence() const noexcept {
    return sequence_;
  }
  bool cyclic() const noexcept { return cyclic_; }
  int vertex_count() const noexcept {
    return partitions_.front().vertex_count();
  }

  std::size_t sigma(std::size_t time) const noexcept {
    return sequence_[time % sequence_.size()];
  }
  const Partition& at(std::size_t time) const {
    return partitions_[sigma(time)];
  }

 private:
  std::vector<Partition> partitions_;
  std::vector<std::size_t> sequence_;
  bool cyclic_ = true;
};

/// Partition-derived quantities entering the bias and variance bounds.
struct PartitionStats {
  std::size_t partition_count = 0;  // m
  bool cyclic = true;
  double beta = 0.0;
  /// d(v, dK_j(v)) indexed [j][v]; kInfiniteDistance for an empty boundary.
  std::vector<std::vector<Distance>> boundary_distance;
  /// Mean boundary distance; +infinity when any distance is infinite.
  std::vector<double> theta_m;
  /// Mean of exp(-beta d), with exp(-beta * infinity) = 0.
  std::vector<double> vartheta_m;
  int delta = 0;
  int delta_K = 0;
  std::vector<Distance> delta_d;  // max_j d(v, dK_j(v))
  std::vector<Distance> nabla_d;  // min_j d(v, dK_j(v))
  std::size_t block_size_max = 0;
  double theta_lower = 0.0;     // min_v theta_m(v)
  double vartheta_upper = 0.0;  // max_v vartheta_m(v)
  bool infinite_boundary = false;
};

/// {v' in K : N(v') not a subset of K}, sorted.
VertexSet block_boundary(const FieldGraph& g, const Partition& p,
                         std::size_t k);

/// d(v, dK(v)) for the block K(v) of p containing v.
Distance dist_to_boundary(const FieldGraph& g, const Partition& p, Vertex v);

/// max over partitions and blocks of the number of blocks within distance r
/// (block-to-block distance is the minimum over vertex pairs).
int compute_delta_K(const FieldGraph& g, const PartitionSchedule& schedule);

PartitionStats partition_stats(const FieldGraph& g,
                               const PartitionSchedule& schedule, double beta);

/// Per-vertex vartheta_m recomputed at another beta from the stored
/// boundary distances.
std::vector<double> vartheta_at(const PartitionStats& stats, double beta);

/// Contiguous blocks of the given sizes starting at vertex 0, rotated by
/// j = 0..shifts-1 vertices; cyclic switching. g must be a cycle 0-1-...-n-1.
PartitionSchedule shifted_cycle_partitions(const FieldGraph& g,
                                           const std::vector<int>& block_sizes,
                                           int shifts);

/// Tiles a torus lattice with tile_w x tile_h rectangles whose origin is
/// shifted by offsets[j]; cyclic switching.
PartitionSchedule torus_tiling_partitions(
    const FieldGraph& g, int tile_w, int tile_h,
    const std::vector<std::pair<int, int>>& offsets);

}  // namespace abpf
