#include <doctest.h>

#include "abpf/dense.hpp"
#include "abpf/errors.hpp"

using namespace abpf;

TEST_SUITE("dense") {

TEST_CASE("mixed-radix encoding puts site 0 first") {
  const auto d = DenseDistribution::uniform({2, 3, 2});
  CHECK(d.size() == 12);
  CHECK(d.encode(std::vector<int>{1, 0, 0}) == 1);
  CHECK(d.encode(std::vector<int>{0, 1, 0}) == 2);
  CHECK(d.encode(std::vector<int>{0, 0, 1}) == 6);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.encode(d.decode(i)) == i);
  CHECK_THROWS_AS(d.encode(std::vector<int>{2, 0, 0}), InvalidArgument);
}

TEST_CASE("validation of tables") {
  CHECK_THROWS_AS(DenseDistribution({2}, {0.5, 0.6}), InvalidArgument);
  CHECK_THROWS_AS(DenseDistribution({2}, {1.5, -0.5}), InvalidArgument);
  CHECK_THROWS_AS(DenseDistribution({2}, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(DenseDistribution::from_weights({2}, {0.0, 0.0}), InvalidArgument);
  const auto w = DenseDistribution::from_weights({2}, {1.0, 3.0});
  CHECK(w[1] == doctest::Approx(0.75));
}

TEST_CASE("point mass and site marginals") {
  const auto d = DenseDistribution::point_mass({2, 2}, std::vector<int>{1, 0});
  CHECK(d[1] == 1.0);
  CHECK(d.site_marginal(0) == std::vector<double>{0.0, 1.0});
  CHECK(d.site_marginal(1) == std::vector<double>{1.0, 0.0});
  const DenseDistribution c({2, 2}, {0.5, 0.0, 0.0, 0.5});
  CHECK(c.site_marginal(1) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("configuration count saturates") {
  std::vector<int> big(80, 2);
  CHECK(configuration_count(big) == SIZE_MAX);
  CHECK(configuration_count(std::vector<int>{3, 4}) == 12);
}

}
