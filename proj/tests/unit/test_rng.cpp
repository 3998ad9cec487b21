#include <doctest.h>

#include <cmath>
#include <vector>

#include "abpf/rng.hpp"

using namespace abpf;

TEST_SUITE("rng") {

TEST_CASE("streams are reproducible and keyed") {
  const RngPolicy p(42);
  auto a = p.stream(StreamPurpose::kPropagate, 1, 2, 3);
  auto b = p.stream(StreamPurpose::kPropagate, 1, 2, 3);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  auto c = p.stream(StreamPurpose::kPropagate, 1, 2, 4);
  auto d = p.stream(StreamPurpose::kResample, 1, 2, 3);
  auto e = RngPolicy(43).stream(StreamPurpose::kPropagate, 1, 2, 3);
  auto f = p.stream(StreamPurpose::kPropagate, 1, 2, 3);
  const auto first = f();
  CHECK(c() != first);
  CHECK(d() != first);
  CHECK(e() != first);
}

TEST_CASE("uniform draws lie in [0,1) with the right mean") {
  auto s = RngPolicy(7).stream(StreamPurpose::kFuzz, 0, 0, 0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // Standard error of the mean is sqrt(1/12/n) ~ 9.1e-4.
  CHECK(std::abs(sum / n - 0.5) < 4e-3);
}

TEST_CASE("categorical sampling by inverse CDF") {
  const std::vector<double> p{0.2, 0.0, 0.5, 0.3};
  CHECK(sample_categorical(p, 0.0) == 0);
  CHECK(sample_categorical(p, 0.19) == 0);
  CHECK(sample_categorical(p, 0.2) == 2);
  CHECK(sample_categorical(p, 0.69) == 2);
  CHECK(sample_categorical(p, 0.71) == 3);
  const std::vector<double> q{0.5, 0.5, 0.0};
  CHECK(sample_categorical(q, 0.9999999999999999) == 1);
}

}
