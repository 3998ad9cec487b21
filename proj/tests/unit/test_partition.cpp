#include <doctest.h>

#include <cmath>
#include <set>

#include "abpf/errors.hpp"
#include "abpf/partition.hpp"

using namespace abpf;

TEST_SUITE("partition") {

TEST_CASE("partitions must be disjoint covers of non-empty blocks") {
  CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(Partition(3, {{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Partition(3, {{0, 1, 2}, {}}), InvalidArgument);
  const Partition p(4, {{3, 1}, {0, 2}});
  CHECK(p.block(0) == VertexSet{1, 3});
  CHECK(p.block_of(2) == 1);
  CHECK(p.max_block_size() == 2);
}

TEST_CASE("block boundary on the five-cycle") {
  const auto g = build_cycle_graph(5, 1);
  const Partition p(5, {{0, 1}, {2, 3, 4}});
  CHECK(block_boundary(g, p, 0) == VertexSet{0, 1});
  CHECK(block_boundary(g, p, 1) == VertexSet{2, 4});
  CHECK(dist_to_boundary(g, p, 3) == 1);
  CHECK(dist_to_boundary(g, p, 2) == 0);
  CHECK_FALSE(is_finite(dist_to_boundary(g, Partition::single_block(5), 0)));
}

TEST_CASE("shifted cycle partitions rotate the base blocks") {
  const auto g = build_cycle_graph(5, 1);
  const auto s = shifted_cycle_partitions(g, {2, 3}, 5);
  REQUIRE(s.size() == 5);
  CHECK(s.cyclic());
  CHECK(s.partition(0) == Partition(5, {{0, 1}, {2, 3, 4}}));
  CHECK(s.partition(1) == Partition(5, {{1, 2}, {3, 4, 0}}));
  CHECK(s.partition(4) == Partition(5, {{4, 0}, {1, 2, 3}}));
  CHECK_THROWS_AS(shifted_cycle_partitions(g, {2, 2}, 5), InvalidArgument);
  CHECK_THROWS_AS(shifted_cycle_partitions(g, {2, 3}, 0), InvalidArgument);
}

TEST_CASE("full five-partition schedule gives theta = 1/5 everywhere") {
  const auto g = build_cycle_graph(5, 1);
  const double beta = 0.7;
  const auto st = partition_stats(g, shifted_cycle_partitions(g, {2, 3}, 5), beta);
  for (int v = 0; v < 5; ++v) {
    CHECK(st.theta_m[v] == doctest::Approx(0.2).epsilon(1e-15));
    // One partition puts v at distance 1, the other four at 0.
    CHECK(st.vartheta_m[v] == doctest::Approx((4.0 + std::exp(-beta)) / 5.0));
    CHECK(st.delta_d[v] == 1);
    CHECK(st.nabla_d[v] == 0);
  }
  CHECK(st.delta == 3);
  CHECK(st.block_size_max == 3);
  CHECK(st.theta_lower == doctest::Approx(0.2));
}

TEST_CASE("four left-most partitions leave one site on the boundary") {
  const auto g = build_cycle_graph(5, 1);
  const auto st = partition_stats(g, shifted_cycle_partitions(g, {2, 3}, 4), 1.0);
  const double expect[5] = {0.25, 0.25, 0.0, 0.25, 0.25};
  for (int v = 0; v < 5; ++v) CHECK(st.theta_m[v] == expect[v]);
}

TEST_CASE("six-cycle with two triples makes every site interior once") {
  const auto g = build_cycle_graph(6, 1);
  const auto sched = shifted_cycle_partitions(g, {3, 3}, 3);
  // Oracle: count the partitions where v's block contains its neighbourhood.
  for (int v = 0; v < 6; ++v) {
    int interior = 0;
    for (const auto& p : sched.partitions()) {
      const auto& k = p.block(p.block_of(v));
      const std::set<int> ks(k.begin(), k.end());
      bool inside = true;
      for (Vertex u : g.neighborhood(v)) inside = inside && ks.count(u);
      interior += inside;
    }
    CHECK(interior == 1);
  }
  const auto st = partition_stats(g, sched, 1.0);
  for (int v = 0; v < 6; ++v) CHECK(st.theta_m[v] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("torus tiling with all nine offsets is spatially uniform") {
  const auto g = build_torus_grid(6, 6, 1);
  std::vector<std::pair<int, int>> offsets;
  for (int dy = 0; dy < 3; ++dy) {
    for (int dx = 0; dx < 3; ++dx) offsets.emplace_back(dx, dy);
  }
  const auto st = partition_stats(g, torus_tiling_partitions(g, 3, 3, offsets), 1.0);
  for (int v = 0; v < 36; ++v) CHECK(st.theta_m[v] == doctest::Approx(1.0 / 9.0));
  CHECK(st.block_size_max == 9);
  CHECK_THROWS_AS(torus_tiling_partitions(g, 4, 3, {{0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(torus_tiling_partitions(build_cycle_graph(6, 1), 3, 3, {{0, 0}}),
                  InvalidArgument);
}

TEST_CASE("block interaction count on the 4x4 torus matches brute force") {
  const auto g = build_torus_grid(4, 4, 1);
  const auto sched = torus_tiling_partitions(g, 2, 2, {{0, 0}});
  const auto& p = sched.partition(0);
  // Oracle: blocks within distance r of each block, by pairwise enumeration.
  int best = 0;
  for (std::size_t a = 0; a < p.block_count(); ++a) {
    int near = 0;
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      Distance d = kInfiniteDistance;
      for (Vertex u : p.block(a)) {
        for (Vertex w : p.block(b)) d = std::min(d, g.distance(u, w));
      }
      near += d <= 1;
    }
    best = std::max(best, near);
  }
  CHECK(best == 3);
  CHECK(compute_delta_K(g, sched) == best);
}

TEST_CASE("explicit sequences and sigma") {
  const auto g = build_cycle_graph(5, 1);
  const auto base = shifted_cycle_partitions(g, {2, 3}, 3).partitions();
  const PartitionSchedule s(base, {2, 0});
  CHECK_FALSE(s.cyclic());
  CHECK(s.sigma(0) == 2);
  CHECK(s.sigma(1) == 0);
  CHECK(s.sigma(5) == 0);
  CHECK(PartitionSchedule(base, {0, 1, 2}).cyclic());
  CHECK_THROWS_AS(PartitionSchedule(base, {3}), InvalidArgument);
  const PartitionSchedule cyc(base);
  CHECK(cyc.sigma(4) == 1);
  CHECK(PartitionSchedule::trivial(5).at(3).block_count() == 1);
}

TEST_CASE("statistics reject non-positive beta and flag empty boundaries") {
  const auto g = build_cycle_graph(5, 1);
  const auto sched = PartitionSchedule::trivial(5);
  CHECK_THROWS_AS(partition_stats(g, sched, 0.0), InvalidArgument);
  const auto st = partition_stats(g, sched, 1.0);
  CHECK(st.infinite_boundary);
  CHECK(std::isinf(st.theta_m[0]));
  CHECK(st.vartheta_m[0] == 0.0);
  const auto again = vartheta_at(partition_stats(g, shifted_cycle_partitions(g, {2, 3}, 5), 1.0), 2.0);
  CHECK(again[0] == doctest::Approx((4.0 + std::exp(-2.0)) / 5.0));
}

}
