#include <doctest.h>

#include <cmath>

#include "abpf/correlation.hpp"
#include "abpf/errors.hpp"
#include "abpf/exact.hpp"

using namespace abpf;

namespace {

/// P(X_{n-1}^v = . | X_{n-1}^{V\v} = x^{V\v}, X_n^K = z^K) from the full
/// two-time joint table mu(x) * prod_u p^u(x, z^u), summing out z off K.
std::vector<double> joint_oracle(const DenseDistribution& mu, const FieldModel& m, Vertex v,
                                 const std::vector<int>& block, const std::vector<int>& x,
                                 const std::vector<int>& z) {
  const std::size_t size = mu.size();
  std::vector<double> out(2, 0.0);
  for (std::size_t xi = 0; xi < size; ++xi) {
    const auto xx = mu.decode(xi);
    bool agree = true;
    for (int u = 0; u < mu.site_count(); ++u) agree = agree && (u == v || xx[u] == x[u]);
    if (!agree) continue;
    for (std::size_t zi = 0; zi < size; ++zi) {
      const auto zz = mu.decode(zi);
      bool match = true;
      for (int u : block) match = match && zz[u] == z[u];
      if (!match) continue;
      double p = mu[xi];
      for (int u = 0; u < mu.site_count(); ++u) p *= m.transition_probability(u, xx, zz[u]);
      out[static_cast<std::size_t>(xx[v])] += p;
    }
  }
  const double t = out[0] + out[1];
  return {out[0] / t, out[1] / t};
}

DenseDistribution some_measure(int n) {
  std::vector<double> w(std::size_t{1} << n);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 + 0.37 * std::sin(1.3 * i + 0.2);
  return DenseDistribution::from_weights(std::vector<int>(n, 2), std::move(w));
}

}  // namespace

TEST_SUITE("correlation") {

TEST_CASE("conditional measure matches the joint-table oracle") {
  const auto g = build_cycle_graph(3, 1);
  const auto m = make_uniform_mixture_model(g, 0.3, 1.2, 0.2);
  const auto mu = some_measure(3);
  const std::vector<int> all{0, 1, 2};
  for (int v = 0; v < 3; ++v) {
    for (int xi = 0; xi < 8; ++xi) {
      for (int zi = 0; zi < 8; ++zi) {
        const auto x = mu.decode(xi), z = mu.decode(zi);
        const auto got = conditional_measure(mu, m, v, x, z);
        const auto want = joint_oracle(mu, m, v, all, x, z);
        CHECK(std::abs(got[0] - want[0]) < 1e-12);
        const std::vector<int> block{v == 0 ? 1 : 0, 2};
        const auto gb = block_conditional_measure(mu, m, v, block, x, z);
        const auto wb = joint_oracle(mu, m, v, block, x, z);
        CHECK(std::abs(gb[1] - wb[1]) < 1e-12);
      }
    }
  }
}

TEST_CASE("conditional measure special cases") {
  const auto g = build_cycle_graph(5, 1);
  const auto uni = make_uniform_mixture_model(g, 1.0, 1.0, 0.2);
  const auto mu = DenseDistribution::uniform(std::vector<int>(5, 2));
  const std::vector<int> x{1, 0, 1, 1, 0}, z{0, 0, 1, 0, 1};
  const auto c = conditional_measure(mu, uni, 2, x, z);
  CHECK(c[0] == doctest::Approx(0.5));

  // One site: posterior of x given z under p with prior mu.
  const auto one = make_uniform_mixture_model(FieldGraph(1, {}, 1), 0.2, 1.0, 0.2);
  const DenseDistribution prior({2}, {0.3, 0.7});
  const std::vector<int> x1{0}, z1{1};
  const auto post = conditional_measure(prior, one, 0, x1, z1);
  const double a0 = 0.3 * one.transition_probability(0, std::vector<int>{0}, 1);
  const double a1 = 0.7 * one.transition_probability(0, std::vector<int>{1}, 1);
  CHECK(post[1] == doctest::Approx(a1 / (a0 + a1)));

  const auto m = make_uniform_mixture_model(g, 0.3, 1.0, 0.2);
  const auto nu = some_measure(5);
  const auto full = conditional_measure(nu, m, 0, x, z);
  const auto cover = block_conditional_measure(nu, m, 0, {4, 0, 1, 2}, x, z);
  CHECK(full[0] == doctest::Approx(cover[0]).epsilon(1e-14));
  // N(0) = {4, 0, 1} misses {2, 3}: the plain conditional of nu at site 0.
  const auto none = block_conditional_measure(nu, m, 0, {2, 3}, x, z);
  std::vector<int> x0 = x, x1b = x;
  x0[0] = 0;
  x1b[0] = 1;
  const double p0 = nu[nu.encode(x0)], p1 = nu[nu.encode(x1b)];
  CHECK(none[1] == doctest::Approx(p1 / (p0 + p1)));

  const auto point = DenseDistribution::point_mass(std::vector<int>(5, 2), std::vector<int>(5, 0));
  CHECK_THROWS_AS(conditional_measure(point, m, 0, x, z), DegenerateConditioning);
}

TEST_CASE("coefficients") {
  const auto g = build_cycle_graph(5, 1);
  const auto uni = make_uniform_mixture_model(g, 1.0, 1.0, 0.2);
  const auto nu = some_measure(5);
  const auto flat = corr_measure(DenseDistribution::uniform(std::vector<int>(5, 2)), uni, 1.0);
  CHECK(flat.corr == 0.0);
  // With a uniform kernel only mu's own conditionals remain, so a product
  // measure has no correlation while a correlated one still does.
  const auto prod = DenseDistribution::uniform(std::vector<int>(5, 2));
  CHECK(block_corr_measure(prod, uni, Partition(5, {{0, 1}, {2, 3, 4}}), 1.0).corr == 0.0);
  CHECK(block_corr_measure(nu, uni, Partition(5, {{0, 1}, {2, 3, 4}}), 1.0).corr > 0.0);

  const auto m = make_uniform_mixture_model(g, 0.9, 1.0, 0.2);
  const auto rep = corr_measure(DenseDistribution::uniform(std::vector<int>(5, 2)), m, 0.5);
  double last = rep.corr;
  for (double beta : {0.6, 1.0, 2.0}) {
    const double c = corr_from_coefficients(g, rep.coefficients, beta);
    CHECK(c >= last);
    last = c;
  }
  for (const auto& row : rep.coefficients) {
    for (double c : row) CHECK((c >= 0.0 && c <= 1.0));
  }
  CHECK(rep.coefficients[0][1] > 0.0);
  CHECK(rep.coefficients[0][1] == doctest::Approx(corr_coefficient(
                                      DenseDistribution::uniform(std::vector<int>(5, 2)), m, 0, 1)));
  CHECK_THROWS_AS(corr_measure(DenseDistribution::uniform(std::vector<int>(7, 2)),
                               make_uniform_mixture_model(build_cycle_graph(7, 1), 0.9, 1.0, 0.2),
                               1.0),
                  CapExceeded);
}

TEST_CASE("product measures decouple sites further apart than 2r") {
  const FieldGraph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 1);
  const auto m = make_uniform_mixture_model(path, 0.2, 1.5, 0.2);
  const auto mu = InitialLaw::product({{0.3, 0.7}, {0.6, 0.4}, {0.5, 0.5}, {0.2, 0.8}, {0.9, 0.1}})
                      .to_dense(64);
  for (int v = 0; v < 5; ++v) {
    for (int w = 0; w < 5; ++w) {
      const double c = corr_coefficient(mu, m, v, w);
      if (path.distance(v, w) > 2) CHECK(c <= 1e-12);
    }
  }
  CHECK(corr_coefficient(mu, m, 0, 2) > 1e-6);
}

}
