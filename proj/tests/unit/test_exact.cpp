#include <doctest.h>

#include <cmath>
#include <sstream>

#include "abpf/diagnostics.hpp"
#include "abpf/errors.hpp"
#include "abpf/exact.hpp"
#include "abpf/particle.hpp"

using namespace abpf;

namespace {

double max_abs_diff(const DenseDistribution& a, const DenseDistribution& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

FieldModel single_site(double lambda, double noise) {
  return make_uniform_mixture_model(FieldGraph(1, {}, 1), lambda, 1.0, noise);
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("prediction under a uniform kernel is uniform") {
  const auto m = make_uniform_mixture_model(build_cycle_graph(4, 1), 1.0, 1.0, 0.2);
  const DenseDistribution rho = DenseDistribution::point_mass({2, 2, 2, 2}, std::vector<int>{1, 0, 1, 1});
  const auto out = predict(m, rho);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(1.0 / 16));
}

TEST_CASE("prediction of a point mass on one site is the kernel row") {
  const auto m = single_site(0.0, 0.2);
  const auto out = predict(m, DenseDistribution::point_mass({2}, std::vector<int>{1}));
  const double up = 1.0 / (1.0 + std::exp(-2.0));
  CHECK(out[1] == doctest::Approx(up).epsilon(1e-14));
  CHECK(out[0] == doctest::Approx(1.0 - up).epsilon(1e-14));
}

TEST_CASE("prediction matches one-step Monte Carlo frequencies") {
  const auto m = make_uniform_mixture_model(build_cycle_graph(3, 1), 0.3, 1.0, 0.2);
  const std::vector<int> x0{1, 0, 1};
  const auto exact = predict(m, DenseDistribution::point_mass({2, 2, 2}, x0));
  const std::size_t n = 100000;
  std::vector<int> states;
  for (std::size_t i = 0; i < n; ++i) states.insert(states.end(), x0.begin(), x0.end());
  const ReplicateStreams streams{RngPolicy(5), 0};
  const auto moved = propagate(m, states, 1, streams);
  std::vector<double> counts(8, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    counts[moved[3 * i] + 2 * moved[3 * i + 1] + 4 * moved[3 * i + 2]] += 1.0;
  }
  for (std::size_t c = 0; c < 8; ++c) {
    const double p = exact[c];
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(counts[c] / n - p) <= 3 * sigma);
  }
}

TEST_CASE("correction by Bayes rule") {
  const auto m = single_site(0.5, 0.1);
  const auto post = correct(m, DenseDistribution::uniform({2}), std::vector<int>{1});
  CHECK(post[0] == doctest::Approx(0.1));
  CHECK(post[1] == doctest::Approx(0.9));
  const auto flat = make_uniform_mixture_model(build_cycle_graph(3, 1), 0.5, 1.0, 0.5);
  const DenseDistribution rho({2, 2, 2}, {0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1});
  const auto same = correct(flat, rho, std::vector<int>{1, 0, 1});
  CHECK(max_abs_diff(same, rho) < 1e-15);
  CHECK(max_abs_diff(correct(flat, same, std::vector<int>{0, 0, 1}), rho) < 1e-15);
}

TEST_CASE("zero evidence is reported") {
  const FieldGraph g(1, {}, 1);
  const FieldModel m(g, {2}, {2}, {{0.5, 0.5, 0.5, 0.5}}, {{1.0, 0.0, 1.0, 0.0}});
  CHECK_THROWS_AS(correct(m, DenseDistribution::uniform({2}), std::vector<int>{1}),
                  DegenerateEvidence);
}

TEST_CASE("marginals, blocking and local total variation") {
  const DenseDistribution corr({2, 2}, {0.5, 0.0, 0.0, 0.5});
  const auto m0 = block_marginal(corr, {0});
  CHECK(m0[0] == 0.5);
  CHECK(m0[1] == 0.5);
  CHECK(max_abs_diff(block_marginal(corr, {0, 1}), corr) == 0.0);
  const auto blocked = blocking(corr, Partition(2, {{0}, {1}}));
  for (std::size_t i = 0; i < 4; ++i) CHECK(blocked[i] == doctest::Approx(0.25));
  CHECK(max_abs_diff(blocking(corr, Partition::single_block(2)), corr) == 0.0);
  const auto uni = DenseDistribution::uniform({2, 2});
  CHECK(local_tv(corr, corr, {0, 1}) == 0.0);
  CHECK(local_tv(corr, uni, {0}) == doctest::Approx(0.0));
  CHECK(local_tv(corr, uni, {0, 1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(block_marginal(corr, {1, 0}), InvalidArgument);

  const DenseDistribution prod = blocking(
      DenseDistribution({2, 2, 2}, {0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1}),
      Partition(3, {{0, 2}, {1}}));
  const Partition p(3, {{0, 2}, {1}});
  CHECK(max_abs_diff(blocking(prod, p), prod) < 1e-15);
  for (const auto& k : p.blocks()) {
    const DenseDistribution rho({2, 2, 2}, {0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1});
    CHECK(local_tv(blocking(rho, p), rho, k) < 1e-15);
  }
}

TEST_CASE("filter runs") {
  const auto g = build_cycle_graph(3, 1);
  const auto m = make_uniform_mixture_model(g, 0.6, 1.0, 0.2);
  const auto mu = DenseDistribution::uniform({2, 2, 2});
  CHECK(exact_filter_run(m, mu, {}).size() == 1);
  CHECK(path_oracle(m, mu, {}).size() == 1);
  const std::vector<Configuration> ys{{1, 1, 0}, {0, 1, 0}, {1, 1, 1}};
  const auto exact = exact_filter_run(m, mu, ys);
  const auto oracle = path_oracle(m, mu, ys);
  REQUIRE(exact.size() == 4);
  for (std::size_t k = 0; k < exact.size(); ++k) CHECK(max_abs_diff(exact[k], oracle[k]) < 1e-12);

  const auto trivial = blocked_filter_run(m, mu, ys, PartitionSchedule::trivial(3));
  for (std::size_t k = 0; k < exact.size(); ++k) CHECK(max_abs_diff(exact[k], trivial[k]) < 1e-12);

  const PartitionSchedule sched({Partition(3, {{0}, {1, 2}}), Partition(3, {{0, 1}, {2}})});
  const auto blocked = blocked_filter_run(m, mu, ys, sched);
  for (std::size_t k = 1; k < blocked.size(); ++k) {
    CHECK(max_abs_diff(blocking(blocked[k], sched.at(k)), blocked[k]) < 1e-14);
  }
}

TEST_CASE("uninformative observations give the prior evolution") {
  const auto m = make_uniform_mixture_model(build_cycle_graph(3, 1), 0.4, 1.0, 0.5);
  const auto mu = DenseDistribution::point_mass({2, 2, 2}, std::vector<int>{1, 1, 0});
  const std::vector<Configuration> ys{{0, 0, 0}, {1, 0, 1}};
  const auto oracle = path_oracle(m, mu, ys);
  const auto prior2 = predict(m, predict(m, mu));
  CHECK(max_abs_diff(oracle[2], prior2) < 1e-12);
  const auto uni = make_uniform_mixture_model(build_cycle_graph(3, 1), 1.0, 1.0, 0.5);
  for (const auto& d : exact_filter_run(uni, DenseDistribution::uniform({2, 2, 2}), ys)) {
    CHECK(max_abs_diff(d, DenseDistribution::uniform({2, 2, 2})) < 1e-15);
  }
}

TEST_CASE("dense caps are enforced") {
  const auto big = make_uniform_mixture_model(build_cycle_graph(13, 1), 0.5, 1.0, 0.2);
  CHECK_THROWS_AS(exact_filter_run(big, DenseDistribution::uniform(std::vector<int>(13, 2)), {}),
                  CapExceeded);
  const auto m = make_uniform_mixture_model(build_cycle_graph(3, 1), 0.5, 1.0, 0.2);
  const std::vector<Configuration> ys(7, Configuration{0, 0, 0});
  CHECK_THROWS_AS(path_oracle(m, DenseDistribution::uniform({2, 2, 2}), ys), CapExceeded);
  const ExactLimits small{4, 100};
  CHECK_THROWS_AS(predict(m, DenseDistribution::uniform({2, 2, 2}), small), CapExceeded);
}

TEST_CASE("disconnected graphs are rejected by the engines") {
  const FieldGraph g(4, {{0, 1}, {2, 3}}, 1);
  const auto m = make_uniform_mixture_model(g, 0.5, 1.0, 0.2);
  CHECK_THROWS_AS(exact_filter_run(m, DenseDistribution::uniform({2, 2, 2, 2}), {}),
                  InvalidArgument);
}

TEST_CASE("distribution dump lists decoded configurations") {
  std::ostringstream os;
  write_distribution_csv(os, DenseDistribution({2, 2}, {0.5, 0.0, 0.25, 0.25}));
  CHECK(os.str() == "index,x0,x1,prob\n0,0,0,0.5\n1,1,0,0\n2,0,1,0.25\n3,1,1,0.25\n");
}

}
