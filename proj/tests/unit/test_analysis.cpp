#include <doctest.h>

#include <cmath>

#include "abpf/analysis.hpp"
#include "abpf/errors.hpp"
#include "abpf/exact.hpp"

using namespace abpf;

namespace {

/// Direct evaluation over every f in {-1,+1}^k, without the Gram matrix.
double brute_rms(const std::vector<DenseDistribution>& runs, const DenseDistribution& ref) {
  const std::size_t k = ref.size();
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    double acc = 0.0;
    for (const auto& r : runs) {
      double diff = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        const double f = (mask >> a) & 1U ? 1.0 : -1.0;
        diff += f * (r[a] - ref[a]);
      }
      acc += diff * diff;
    }
    best = std::max(best, acc / runs.size());
  }
  return std::sqrt(best);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("spatial spread") {
  const std::vector<double> flat{0.3, 0.3, 0.3};
  CHECK(spatial_spread(flat).max_minus_min == 0.0);
  CHECK(spatial_spread(flat).std_dev == doctest::Approx(0.0));
  const std::vector<double> spike{0, 0, 0, 0, 1};
  CHECK(spatial_spread(spike).max_minus_min == 1.0);
  CHECK(spatial_spread(spike).std_dev == doctest::Approx(0.4));
  CHECK_THROWS_AS(spatial_spread(std::vector<double>{}), InvalidArgument);
  const auto g = build_cycle_graph(5, 1);
  const auto st = partition_stats(g, shifted_cycle_partitions(g, {2, 3}, 5), 1.0);
  CHECK(spatial_spread(st.theta_m).max_minus_min == 0.0);
}

TEST_CASE("local norm estimator") {
  const DenseDistribution ref({2, 2}, {0.1, 0.2, 0.3, 0.4});
  std::vector<DenseDistribution> same(3, ref);
  CHECK(rms_norm_estimate(same, ref) == 0.0);

  const DenseDistribution other({2, 2}, {0.25, 0.25, 0.25, 0.25});
  std::vector<DenseDistribution> single{other};
  CHECK(rms_norm_estimate(single, ref) == doctest::Approx(local_tv(other, ref, {0, 1})));

  std::vector<DenseDistribution> runs{other, DenseDistribution({2, 2}, {0.0, 0.5, 0.5, 0.0}),
                                      DenseDistribution({2, 2}, {0.7, 0.1, 0.1, 0.1})};
  CHECK(rms_norm_estimate(runs, ref) == doctest::Approx(brute_rms(runs, ref)).epsilon(1e-12));

  CHECK_THROWS_AS(rms_norm_estimate(std::vector<DenseDistribution>{DenseDistribution::uniform({2, 2, 2, 2, 2})},
                                    DenseDistribution::uniform({2, 2, 2, 2, 2})),
                  CapExceeded);
}

TEST_CASE("sampling error is of order one over root N") {
  const auto rho = DenseDistribution::uniform({4});
  for (std::size_t n : {100, 400}) {
    std::vector<DenseDistribution> runs;
    for (std::size_t r = 0; r < 1000; ++r) {
      runs.push_back(sampling_operator(rho, n, ReplicateStreams{RngPolicy(8), r}));
    }
    CHECK(rms_norm_estimate(runs, rho) <= 1.1 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("ensemble overload restricts to J") {
  const BlockedEnsemble e({2, 2}, {1, 0, 1, 1}, Partition(2, {{0}, {1}}),
                          {{0.5, 0.5}, {0.5, 0.5}}, 0);
  const auto ref = DenseDistribution::uniform({2, 2});
  const BlockedEnsemble* runs[] = {&e};
  // Site 0 is always 1: L1 distance to uniform is 1.
  CHECK(rms_norm_estimate(runs, ref, {0}) == doctest::Approx(1.0));
  CHECK(rms_norm_estimate(runs, ref, {1}) == doctest::Approx(0.0));
}

TEST_CASE("bias profile") {
  const auto g = build_cycle_graph(5, 1);
  const auto m = make_uniform_mixture_model(g, 0.7, 1.0, 0.2);
  const auto law = InitialLaw::uniform(m.state_sizes());
  const auto traj = simulate(m, law, 8, 1);
  const auto mu = law.to_dense(4096);
  const auto zero = bias_profile(m, mu, traj.observations, PartitionSchedule::trivial(5), 5);
  for (const auto& row : zero.bias) {
    for (double b : row) CHECK(b < 1e-12);
  }
  const auto uni = make_uniform_mixture_model(g, 1.0, 1.0, 0.5);
  const auto flat = bias_profile(uni, mu, traj.observations,
                                 shifted_cycle_partitions(g, {2, 3}, 5), 5);
  for (double b : flat.window_bias) CHECK(b < 1e-12);

  const auto rep = bias_profile(m, mu, traj.observations,
                                shifted_cycle_partitions(g, {2, 3}, 5), 3);
  for (int v = 0; v < 5; ++v) {
    const double avg = (rep.bias[6][v] + rep.bias[7][v] + rep.bias[8][v]) / 3.0;
    CHECK(rep.window_bias[v] == doctest::Approx(avg));
    for (const auto& row : rep.bias) CHECK((row[v] >= 0.0 && row[v] <= 2.0));
  }
  CHECK_THROWS_AS(bias_profile(m, mu, traj.observations, PartitionSchedule::trivial(5), 9),
                  InvalidArgument);
}

}
