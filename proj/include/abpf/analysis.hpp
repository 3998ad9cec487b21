#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "abpf/dense.hpp"
#include "abpf/exact.hpp"
#include "abpf/graph.hpp"
#include "abpf/particle.hpp"

namespace abpf {

/// Largest |X^J| accepted by the local-norm estimator.
inline constexpr std::size_t kMaxTestSpace = 16;

struct Spread {
  double max_minus_min = 0.0;
  double std_dev = 0.0;  // population standard deviation
};

Spread spatial_spread(std::span<const double> profile);

/// sup over f: X^J -> {-1, +1} of sqrt(mean_r (runs[r] f - reference f)^2).
/// All inputs are J-marginal tables on the same space. The objective is a
/// convex quadratic in f, so the sup over |f| <= 1 sits on a cube vertex;
/// f and -f give the same value, so half of the vertices are visited.
double rms_norm_estimate(std::span<const DenseDistribution> runs,
                         const DenseDistribution& reference);

/// Same estimate with each replicate's ensemble restricted to J and the
/// reference given as a full joint table.
double rms_norm_estimate(std::span<const BlockedEnsemble* const> runs,
                         const DenseDistribution& reference,
                         const VertexSet& sites);

struct ErrorReport {
  std::size_t window = 0;
  /// ||pi_k - tilde pi_k||_v indexed [k][v], k = 0..n.
  std::vector<std::vector<double>> bias;
  /// Trailing window average of bias at the final time, per site.
  std::vector<double> window_bias;
  Spread window_spread;
  /// Optional Monte Carlo estimates indexed [k][v] (empty when not run):
  /// |||pi_k - hat pi_k|||_v and |||tilde pi_k - hat pi_k|||_v.
  std::vector<std::vector<double>> total_error;
  std::vector<std::vector<double>> variance_error;
};

/// Mean of series[k][v] over k = n-window+1 .. n (n = last index), per v.
std::vector<double> trailing_window_mean(
    const std::vector<std::vector<double>>& series, std::size_t window);

/// Per-site local_tv between exact and blocked filters at every time.
ErrorReport bias_profile(const std::vector<DenseDistribution>& exact,
                         const std::vector<DenseDistribution>& blocked,
                         std::size_t window);

/// Runs both exact filters on the same observations and profiles the bias.
ErrorReport bias_profile(const FieldModel& model, const DenseDistribution& mu,
                         const std::vector<Configuration>& observations,
                         const PartitionSchedule& schedule, std::size_t window,
                         const ExactLimits& limits = {});

}  // namespace abpf
