#include "abpf/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "abpf/errors.hpp"

namespace abpf {

FieldGraph::FieldGraph(int vertex_count,
                       std::vector<std::pair<Vertex, Vertex>> edges,
                       int radius)
    : vertex_count_(vertex_count), radius_(radius) {
  if (vertex_count < 1) {
    throw InvalidArgument("graph needs at least one vertex");
  }
  if (radius < 1) {
    throw InvalidArgument("neighbourhood radius must be a positive integer");
  }
  for (auto& [a, b] : edges) {
    if (!valid_vertex(a) || !valid_vertex(b)) {
      throw InvalidArgument("edge endpoint out of range: {" +
                            std::to_string(a) + ", " + std::to_string(b) + "}");
    }
    if (a == b) {
      throw InvalidArgument("self-loop at vertex " + std::to_string(a));
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end());
      dup != edges.end()) {
    throw InvalidArgument("duplicate edge {" + std::to_string(dup->first) +
                          ", " + std::to_string(dup->second) + "}");
  }
  edges_ = std::move(edges);

  const auto n = static_cast<std::size_t>(vertex_count_);
  adjacency_.assign(n, {});
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  dist_.assign(n * n, kInfiniteDistance);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < vertex_count_; ++s) {
    Distance* row = dist_.data() + static_cast<std::size_t>(s) * n;
    row[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : adjacency_[u]) {
        if (row[w] == kInfiniteDistance) {
          row[w] = row[u] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  connected_ = std::none_of(dist_.begin(), dist_.begin() + n, [](Distance d) {
    return d == kInfiniteDistance;
  });

  neighborhoods_.assign(n, {});
  for (Vertex v = 0; v < vertex_count_; ++v) {
    for (Vertex w = 0; w < vertex_count_; ++w) {
      const Distance d = distance(v, w);
      if (is_finite(d) && d <= static_cast<Distance>(radius_)) {
        neighborhoods_[v].push_back(w);
      }
    }
  }
}

void FieldGraph::require_vertex(Vertex v) const {
  if (!valid_vertex(v)) {
    throw InvalidArgument("vertex " + std::to_string(v) +
                          " out of range for graph with " +
                          std::to_string(vertex_count_) + " vertices");
  }
}

std::span<const Vertex> FieldGraph::adjacent(Vertex v) const {
  require_vertex(v);
  return adjacency_[v];
}

Distance FieldGraph::distance(Vertex a, Vertex b) const {
  require_vertex(a);
  require_vertex(b);
  return dist_[static_cast<std::size_t>(a) * vertex_count_ + b];
}

std::span<const Vertex> FieldGraph::neighborhood(Vertex v) const {
  require_vertex(v);
  return neighborhoods_[v];
}

Distance FieldGraph::set_distance(std::span<const Vertex> a,
                                  std::span<const Vertex> b) const {
  Distance best = kInfiniteDistance;
  for (Vertex u : a) {
    for (Vertex w : b) best = std::min(best, distance(u, w));
  }
  return best;
}

FieldGraph build_cycle_graph(int n, int radius) {
  if (n < 3) throw InvalidArgument("cycle graph needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return FieldGraph(n, std::move(edges), radius);
}

FieldGraph build_torus_grid(int width, int height, int radius) {
  if (width < 3 || height < 3) {
    throw InvalidArgument("torus dimensions must both be >= 3");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(2 * width * height));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vertex v = y * width + x;
      edges.emplace_back(v, y * width + (x + 1) % width);
      edges.emplace_back(v, ((y + 1) % height) * width + x);
    }
  }
  FieldGraph g(width * height, std::move(edges), radius);
  g.lattice_ = LatticeShape{width, height};
  return g;
}

VertexSet neighborhood(const FieldGraph& g, Vertex v) {
  const auto n = g.neighborhood(v);
  return {n.begin(), n.end()};
}

int compute_delta(const FieldGraph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    best = std::max(best, g.neighborhood(v).size());
  }
  return static_cast<int>(best);
}

}  // namespace abpf
