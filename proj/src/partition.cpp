#include "abpf/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "abpf/errors.hpp"

namespace abpf {

Partition::Partition(int vertex_count, std::vector<VertexSet> blocks)
    : blocks_(std::move(blocks)) {
  if (vertex_count < 1) throw InvalidArgument("partition of an empty vertex set");
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  block_of_.assign(static_cast<std::size_t>(vertex_count), unset);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    auto& b = blocks_[k];
    if (b.empty()) {
      throw InvalidArgument("partition block " + std::to_string(k) + " is empty");
    }
    std::sort(b.begin(), b.end());
    for (Vertex v : b) {
      if (v < 0 || v >= vertex_count) {
        throw InvalidArgument("partition block " + std::to_string(k) +
                              " holds out-of-range vertex " + std::to_string(v));
      }
      if (block_of_[v] != unset) {
        throw InvalidArgument("vertex " + std::to_string(v) +
                              " appears in more than one block");
      }
      block_of_[v] = k;
    }
  }
  if (auto it = std::find(block_of_.begin(), block_of_.end(), unset);
      it != block_of_.end()) {
    throw InvalidArgument("vertex " +
                          std::to_string(it - block_of_.begin()) +
                          " is not covered by the partition");
  }
}

Partition Partition::single_block(int vertex_count) {
  VertexSet all(static_cast<std::size_t>(std::max(vertex_count, 0)));
  std::iota(all.begin(), all.end(), 0);
  return Partition(vertex_count, {std::move(all)});
}

const VertexSet& Partition::block(std::size_t k) const {
  if (k >= blocks_.size()) {
    throw InvalidArgument("block index " + std::to_string(k) + " out of range");
  }
  return blocks_[k];
}

std::size_t Partition::block_of(Vertex v) const {
  if (v < 0 || v >= vertex_count()) {
    throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  }
  return block_of_[v];
}

std::size_t Partition::max_block_size() const noexcept {
  std::size_t best = 0;
  for (const auto& b : blocks_) best = std::max(best, b.size());
  return best;
}

PartitionSchedule::PartitionSchedule(std::vector<Partition> partitions)
    : partitions_(std::move(partitions)) {
  if (partitions_.empty()) throw InvalidArgument("schedule needs m >= 1 partitions");
  sequence_.resize(partitions_.size());
  std::iota(sequence_.begin(), sequence_.end(), std::size_t{0});
  for (const auto& p : partitions_) {
    if (p.vertex_count() != partitions_.front().vertex_count()) {
      throw InvalidArgument("schedule partitions cover different vertex sets");
    }
  }
}

PartitionSchedule::PartitionSchedule(std::vector<Partition> partitions,
                                     std::vector<std::size_t> sequence)
    : PartitionSchedule(std::move(partitions)) {
  if (sequence.empty()) throw InvalidArgument("switching sequence is empty");
  for (std::size_t s : sequence) {
    if (s >= partitions_.size()) {
      throw InvalidArgument("switching signal value " + std::to_string(s) +
                            " out of range for m = " +
                            std::to_string(partitions_.size()));
    }
  }
  cyclic_ = sequence == sequence_;
  sequence_ = std::move(sequence);
}

PartitionSchedule PartitionSchedule::trivial(int vertex_count) {
  return PartitionSchedule({Partition::single_block(vertex_count)});
}

const Partition& PartitionSchedule::partition(std::size_t j) const {
  if (j >= partitions_.size()) {
    throw InvalidArgument("partition index " + std::to_string(j) + " out of range");
  }
  return partitions_[j];
}

namespace {

void require_same_vertex_count(const FieldGraph& g, const Partition& p) {
  if (p.vertex_count() != g.vertex_count()) {
    throw InvalidArgument("partition covers " + std::to_string(p.vertex_count()) +
                          " vertices but the graph has " +
                          std::to_string(g.vertex_count()));
  }
}

bool inside_block(const Partition& p, std::size_t k,
                  std::span<const Vertex> vs) {
  return std::all_of(vs.begin(), vs.end(),
                     [&](Vertex u) { return p.block_of(u) == k; });
}

}  // namespace

VertexSet block_boundary(const FieldGraph& g, const Partition& p,
                         std::size_t k) {
  require_same_vertex_count(g, p);
  VertexSet out;
  for (Vertex v : p.block(k)) {
    if (!inside_block(p, k, g.neighborhood(v))) out.push_back(v);
  }
  return out;
}

Distance dist_to_boundary(const FieldGraph& g, const Partition& p, Vertex v) {
  require_same_vertex_count(g, p);
  g.require_vertex(v);
  const VertexSet boundary = block_boundary(g, p, p.block_of(v));
  const Vertex self[] = {v};
  return g.set_distance(self, boundary);
}

int compute_delta_K(const FieldGraph& g, const PartitionSchedule& schedule) {
  int best = 0;
  const auto r = static_cast<Distance>(g.radius());
  for (const auto& p : schedule.partitions()) {
    require_same_vertex_count(g, p);
    for (const auto& a : p.blocks()) {
      int count = 0;
      for (const auto& b : p.blocks()) {
        const Distance d = g.set_distance(a, b);
        if (is_finite(d) && d <= r) ++count;
      }
      best = std::max(best, count);
    }
  }
  return best;
}

std::vector<double> vartheta_at(const PartitionStats& stats, double beta) {
  const std::size_t n =
      stats.boundary_distance.empty() ? 0 : stats.boundary_distance[0].size();
  std::vector<double> out(n, 0.0);
  const double m = static_cast<double>(stats.partition_count);
  for (std::size_t v = 0; v < n; ++v) {
    double acc = 0.0;
    for (const auto& row : stats.boundary_distance) {
      if (is_finite(row[v])) acc += std::exp(-beta * static_cast<double>(row[v]));
    }
    out[v] = acc / m;
  }
  return out;
}

PartitionStats partition_stats(const FieldGraph& g,
                               const PartitionSchedule& schedule, double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  const int n = g.vertex_count();
  PartitionStats s;
  s.partition_count = schedule.size();
  s.cyclic = schedule.cyclic();
  s.beta = beta;
  s.delta = compute_delta(g);
  s.delta_K = compute_delta_K(g, schedule);

  s.boundary_distance.reserve(schedule.size());
  for (const auto& p : schedule.partitions()) {
    s.block_size_max = std::max(s.block_size_max, p.max_block_size());
    std::vector<VertexSet> boundaries;
    boundaries.reserve(p.block_count());
    for (std::size_t k = 0; k < p.block_count(); ++k) {
      boundaries.push_back(block_boundary(g, p, k));
    }
    std::vector<Distance> row(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      const Vertex self[] = {v};
      row[v] = g.set_distance(self, boundaries[p.block_of(v)]);
    }
    s.boundary_distance.push_back(std::move(row));
  }

  const double m = static_cast<double>(schedule.size());
  s.theta_m.assign(n, 0.0);
  s.delta_d.assign(n, 0);
  s.nabla_d.assign(n, kInfiniteDistance);
  for (Vertex v = 0; v < n; ++v) {
    double sum = 0.0;
    bool infinite = false;
    for (const auto& row : s.boundary_distance) {
      const Distance d = row[v];
      s.delta_d[v] = std::max(s.delta_d[v], d);
      s.nabla_d[v] = std::min(s.nabla_d[v], d);
      if (is_finite(d)) {
        sum += static_cast<double>(d);
      } else {
        infinite = true;
      }
    }
    s.theta_m[v] = infinite ? std::numeric_limits<double>::infinity() : sum / m;
    s.infinite_boundary = s.infinite_boundary || infinite;
  }
  s.vartheta_m = vartheta_at(s, beta);
  s.theta_lower = *std::min_element(s.theta_m.begin(), s.theta_m.end());
  s.vartheta_upper = *std::max_element(s.vartheta_m.begin(), s.vartheta_m.end());
  return s;
}

PartitionSchedule shifted_cycle_partitions(const FieldGraph& g,
                                           const std::vector<int>& block_sizes,
                                           int shifts) {
  const int n = g.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    const auto adj = g.adjacent(v);
    const Vertex next = (v + 1) % n;
    if (adj.size() != 2 || std::find(adj.begin(), adj.end(), next) == adj.end()) {
      throw InvalidArgument("shifted cycle partitions need a cycle graph 0-1-...-(n-1)");
    }
  }
  if (block_sizes.empty()) throw InvalidArgument("no block sizes given");
  int total = 0;
  for (int b : block_sizes) {
    if (b < 1) throw InvalidArgument("block sizes must be positive");
    total += b;
  }
  if (total != n) {
    throw InvalidArgument("block sizes sum to " + std::to_string(total) +
                          " but the cycle has " + std::to_string(n) + " vertices");
  }
  if (shifts < 1 || shifts > n) {
    throw InvalidArgument("shift count must lie in [1, n]");
  }
  std::vector<Partition> parts;
  parts.reserve(static_cast<std::size_t>(shifts));
  for (int j = 0; j < shifts; ++j) {
    std::vector<VertexSet> blocks;
    int start = 0;
    for (int size : block_sizes) {
      VertexSet b;
      for (int i = 0; i < size; ++i) b.push_back((start + i + j) % n);
      blocks.push_back(std::move(b));
      start += size;
    }
    parts.emplace_back(n, std::move(blocks));
  }
  return PartitionSchedule(std::move(parts));
}

PartitionSchedule torus_tiling_partitions(
    const FieldGraph& g, int tile_w, int tile_h,
    const std::vector<std::pair<int, int>>& offsets) {
  if (!g.lattice()) {
    throw InvalidArgument("torus tiling needs a graph built by build_torus_grid");
  }
  const auto [w, h] = *g.lattice();
  if (tile_w < 1 || tile_h < 1 || w % tile_w != 0 || h % tile_h != 0) {
    throw InvalidArgument("tile " + std::to_string(tile_w) + "x" +
                          std::to_string(tile_h) + " does not divide the " +
                          std::to_string(w) + "x" + std::to_string(h) + " torus");
  }
  if (offsets.empty()) throw InvalidArgument("no tiling offsets given");
  const int tiles_x = w / tile_w;
  const int tiles_y = h / tile_h;
  std::vector<Partition> parts;
  for (const auto& [dx, dy] : offsets) {
    if (dx < 0 || dx >= w || dy < 0 || dy >= h) {
      throw InvalidArgument("tiling offset (" + std::to_string(dx) + ", " +
                            std::to_string(dy) + ") outside the lattice");
    }
    std::vector<VertexSet> blocks(static_cast<std::size_t>(tiles_x * tiles_y));
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int tx = ((x - dx + w) % w) / tile_w;
        const int ty = ((y - dy + h) % h) / tile_h;
        blocks[ty * tiles_x + tx].push_back(y * w + x);
      }
    }
    parts.emplace_back(w * h, std::move(blocks));
  }
  return PartitionSchedule(std::move(parts));
}

}  // namespace abpf
