#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "abpf/errors.hpp"
#include "abpf/graph.hpp"

using namespace abpf;

TEST_SUITE("graph") {

TEST_CASE("cycle distances follow the shorter arc") {
  for (int n : {3, 5, 8}) {
    const auto g = build_cycle_graph(n, 1);
    CHECK(g.connected());
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const int d = std::abs(a - b);
        CHECK(g.distance(a, b) == static_cast<Distance>(std::min(d, n - d)));
      }
    }
  }
}

TEST_CASE("cycle neighbourhoods at radius 1 and 2") {
  const auto g = build_cycle_graph(5, 1);
  CHECK(neighborhood(g, 0) == VertexSet{0, 1, 4});
  CHECK(neighborhood(g, 2) == VertexSet{1, 2, 3});
  CHECK(compute_delta(g) == 3);
  const auto g2 = build_cycle_graph(7, 2);
  CHECK(neighborhood(g2, 0) == VertexSet{0, 1, 2, 5, 6});
  CHECK(compute_delta(g2) == 5);
}

TEST_CASE("torus distances match wrapped Manhattan distance") {
  const int w = 4, h = 4;
  const auto g = build_torus_grid(w, h, 1);
  REQUIRE(g.lattice().has_value());
  for (int a = 0; a < w * h; ++a) {
    for (int b = 0; b < w * h; ++b) {
      const int dx = std::abs(a % w - b % w), dy = std::abs(a / w - b / w);
      const int expect = std::min(dx, w - dx) + std::min(dy, h - dy);
      CHECK(g.distance(a, b) == static_cast<Distance>(expect));
    }
  }
  // (0,0) to (3,3) wraps to distance 2; the antipode (2,2) is at 4.
  CHECK(g.distance(0, 3 * w + 3) == 2);
  CHECK(g.distance(0, 2 * w + 2) == 4);
  CHECK(compute_delta(g) == 5);
}

TEST_CASE("set distance is the minimum over pairs") {
  const auto g = build_cycle_graph(8, 1);
  const VertexSet a{0, 1}, b{4, 5};
  CHECK(g.set_distance(a, b) == 3);
  const VertexSet c{1, 6};
  CHECK(g.set_distance(a, c) == 0);
}

TEST_CASE("explicit graphs validate their edges") {
  CHECK_THROWS_AS(FieldGraph(3, {{0, 0}}, 1), InvalidArgument);
  CHECK_THROWS_AS(FieldGraph(3, {{0, 1}, {1, 0}}, 1), InvalidArgument);
  CHECK_THROWS_AS(FieldGraph(3, {{0, 3}}, 1), InvalidArgument);
  CHECK_THROWS_AS(FieldGraph(3, {{0, 1}}, 0), InvalidArgument);
  CHECK_THROWS_AS(build_cycle_graph(2, 1), InvalidArgument);
  CHECK_THROWS_AS(build_torus_grid(2, 4, 1), InvalidArgument);
}

TEST_CASE("disconnected graphs report infinite distances") {
  const FieldGraph g(4, {{0, 1}, {2, 3}}, 1);
  CHECK_FALSE(g.connected());
  CHECK_FALSE(is_finite(g.distance(0, 2)));
  CHECK(g.distance(0, 1) == 1);
}

TEST_CASE("path graph neighbourhoods truncate at the ends") {
  const FieldGraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 1);
  CHECK(neighborhood(g, 0) == VertexSet{0, 1});
  CHECK(neighborhood(g, 2) == VertexSet{1, 2, 3});
  CHECK(g.distance(0, 4) == 4);
}

}
