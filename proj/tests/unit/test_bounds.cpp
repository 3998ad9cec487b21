#include <doctest.h>

#include <cmath>

#include "abpf/bounds.hpp"
#include "abpf/errors.hpp"

using namespace abpf;

TEST_SUITE("bounds") {

TEST_CASE("threshold and beta") {
  CHECK(epsilon_threshold(3, BoundConstants::kTheorem) ==
        doctest::Approx(0.9989685372824282).epsilon(1e-14));
  CHECK(epsilon_threshold(3, BoundConstants::kLemma) ==
        doctest::Approx(0.9988392293300492).epsilon(1e-14));
  CHECK(theorem2_beta(0.9995, 3, 1, BoundConstants::kTheorem) ==
        doctest::Approx(0.36139830146014496).epsilon(1e-12));
  CHECK(std::isinf(theorem2_beta(1.0, 3, 1, BoundConstants::kTheorem)));
  CHECK_THROWS_AS(theorem2_beta(0.9, 3, 1, BoundConstants::kTheorem), BoundDomainError);
}

TEST_CASE("bias bound on the five-partition cycle schedule") {
  const auto g = build_cycle_graph(5, 1);
  const auto st = partition_stats(g, shifted_cycle_partitions(g, {2, 3}, 5), 1.0);
  const auto rep = theorem2_bound(st, 0.9995, 3, 1);
  CHECK(rep.hypotheses_hold());
  const double beta = 0.36139830146014496;
  const double pre = 8 * std::exp(-beta) / (1 - std::exp(-beta)) * (1 - std::pow(0.9995, 6));
  CHECK(rep.prefactor == doctest::Approx(pre).epsilon(1e-12));
  for (int v = 0; v < 5; ++v) {
    CHECK(rep.first_rhs[v] == doctest::Approx(pre * (4 + std::exp(-beta)) / 5).epsilon(1e-12));
    // Printed form: exp(-beta e^{-beta (1 - 0)} (1/5) (1/5)).
    CHECK(rep.second_rhs[v] ==
          doctest::Approx(pre * std::exp(-beta * std::exp(-beta) * 0.04)).epsilon(1e-12));
    CHECK(rep.first_rhs[v] <= rep.second_rhs[v]);
  }
  const auto alt = theorem2_bound(st, 0.9995, 3, 1, {BoundConstants::kTheorem, false});
  CHECK(alt.second_rhs[0] ==
        doctest::Approx(pre * std::exp(-beta * std::exp(-beta) * 0.2)).epsilon(1e-12));
  const auto lemma = theorem2_bound(st, 0.9995, 3, 1, {BoundConstants::kLemma, true});
  CHECK(lemma.beta == doctest::Approx(-0.5 * std::log(144 * (1 - std::pow(0.9995, 6)))));
}

TEST_CASE("perfect mixing gives zero bounds and low epsilon is refused") {
  const auto g = build_cycle_graph(5, 1);
  const auto st = partition_stats(g, shifted_cycle_partitions(g, {2, 3}, 5), 1.0);
  const auto rep = theorem2_bound(st, 1.0, 3, 1);
  for (int v = 0; v < 5; ++v) {
    CHECK(rep.first_rhs[v] == 0.0);
    CHECK(rep.second_rhs[v] == 0.0);
  }
  CHECK_THROWS_AS(theorem2_bound(st, 0.7, 3, 1), BoundDomainError);
  // Between the 16 and 18 thresholds: beta exists under 18 only as a flag.
  const auto trivial = partition_stats(g, PartitionSchedule::trivial(5), 1.0);
  const auto empty = theorem2_bound(trivial, 0.9995, 3, 1);
  CHECK(empty.first_rhs[0] == 0.0);
  CHECK(empty.second_rhs[0] == 0.0);
  CHECK_FALSE(empty.finite_boundaries);
}

TEST_CASE("variance shape") {
  CHECK(theorem1_shape(1, 100, 1.0, 1.0) == doctest::Approx(std::exp(1.0) / 10));
  CHECK(theorem1_shape(3, 400, 2.0, 0.5) ==
        doctest::Approx(theorem1_shape(3, 100, 2.0, 0.5) / 2));
  CHECK(theorem1_shape(4, 100, 1.0, 0.1) > theorem1_shape(3, 100, 1.0, 0.1));
  CHECK_THROWS_AS(theorem1_shape(3, 0, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("minor lemma as printed") {
  CHECK(lemma_minor_holds(1.0, 1.0, 1.0));
  CHECK(lemma_minor_holds(2.0, 1.0, 1.0));
  CHECK_FALSE(lemma_minor_holds(1.0, 1.0, 2.0));
  // Outside a = b as well: 2*1.5 - 1/1.5 = 2.333 > 1 * 2.25.
  CHECK_FALSE(lemma_minor_holds(2.0, 1.0, 1.5));
  CHECK(lemma_minor_holds(1.0, 2.0, 1.5));
  CHECK_THROWS_AS(lemma_minor_holds(0.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(lemma_minor_holds(1.0, 1.0, 0.5), InvalidArgument);
}

}
