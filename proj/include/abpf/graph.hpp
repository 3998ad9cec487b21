#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace abpf {

using Vertex = int;
using VertexSet = std::vector<Vertex>;

/// Hop distance; kInfiniteDistance marks vertices in different components
/// (or the distance to an empty vertex set).
using Distance = std::uint32_t;
inline constexpr Distance kInfiniteDistance =
    std::numeric_limits<Distance>::max();

inline constexpr bool is_finite(Distance d) noexcept {
  return d != kInfiniteDistance;
}

/// Width and height of a wrapped lattice built by build_torus_grid.
struct LatticeShape {
  int width = 0;
  int height = 0;
};

/// Finite undirected simple graph with a neighbourhood radius.
///
/// All-pairs hop distances are computed once by breadth-first search at
/// construction and stored densely, so memory is O(|V|^2). Neighbourhoods
/// N(v) = {v' : d(v, v') <= r} are cached as sorted vertex lists.
class FieldGraph {
 public:
  /// Throws InvalidArgument on self-loops, duplicate edges, out-of-range
  /// endpoints, vertex_count == 0 or radius < 1.
  FieldGraph(int vertex_count, std::vector<std::pair<Vertex, Vertex>> edges,
             int radius);

  int vertex_count() const noexcept { return vertex_count_; }
  int radius() const noexcept { return radius_; }
  /// Edges with first < second, sorted.
  const std::vector<std::pair<Vertex, Vertex>>& edges() const noexcept {
    return edges_;
  }
  std::span<const Vertex> adjacent(Vertex v) const;

  Distance distance(Vertex a, Vertex b) const;
  bool connected() const noexcept { return connected_; }

  /// Sorted radius-r neighbourhood of v; always contains v.
  std::span<const Vertex> neighborhood(Vertex v) const;

  /// Minimum hop distance between any pair across the two sets; infinite if
  /// either set is empty.
  Distance set_distance(std::span<const Vertex> a,
                        std::span<const Vertex> b) const;

  bool valid_vertex(Vertex v) const noexcept {
    return v >= 0 && v < vertex_count_;
  }
  void require_vertex(Vertex v) const;

  /// Set only for graphs produced by build_torus_grid.
  const std::optional<LatticeShape>& lattice() const noexcept {
    return lattice_;
  }

 private:
  friend FieldGraph build_torus_grid(int, int, int);

  int vertex_count_;
  int radius_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<VertexSet> adjacency_;
  std::vector<Distance> dist_;
  std::vector<VertexSet> neighborhoods_;
  bool connected_ = true;
  std::optional<LatticeShape> lattice_;
};

/// Cycle C_n with edges {i, (i+1) mod n}. Requires n >= 3.
FieldGraph build_cycle_graph(int n, int radius);

/// w x h lattice wrapped on a torus with 4-neighbour adjacency. Vertex
/// (x, y) has index y * w + x. Requires w, h >= 3.
FieldGraph build_torus_grid(int width, int height, int radius);

/// Sorted {v' : d(v, v') <= r}. Throws InvalidArgument for a bad vertex.
VertexSet neighborhood(const FieldGraph& g, Vertex v);

/// max_v |N(v)|.
int compute_delta(const FieldGraph& g);

}  // namespace abpf
