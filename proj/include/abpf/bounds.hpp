#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "abpf/partition.hpp"

namespace abpf {

/// Which numeric constant enters epsilon_0 and beta: 18 D^2 as printed in
/// the bias theorem, or 16 D^2 as used by the decay-of-correlation lemmas.
enum class BoundConstants : int { kTheorem = 18, kLemma = 16 };

/// (1 - 1/(c D^2))^(1/(2D)).
double epsilon_threshold(int delta, BoundConstants constants);

/// -(2r)^{-1} log(c D^2 (1 - eps^{2D})). Returns +infinity for eps == 1.
/// Throws BoundDomainError when the result would be <= 0.
double theorem2_beta(double epsilon, int delta, int radius,
                     BoundConstants constants);

struct BoundOptions {
  BoundConstants constants = BoundConstants::kTheorem;
  /// Keep the extra 1/m in front of theta_m inside the exponent of the
  /// second bound, exactly as printed. false uses theta_m alone.
  bool theta_extra_inverse_m = true;
};

struct BoundReport {
  double epsilon = 0.0;
  double epsilon0 = 0.0;
  double beta = 0.0;
  /// 8 e^{-beta} / (1 - e^{-beta}) * (1 - eps^{2D}).
  double prefactor = 0.0;
  int delta = 0;
  int radius = 0;
  std::size_t partition_count = 0;
  std::vector<double> vartheta_m;  // evaluated at beta
  std::vector<double> first_rhs;   // prefactor * vartheta_m(v)
  std::vector<double> second_rhs;  // exponential (theta_m) form
  bool epsilon_above_threshold = false;
  bool cyclic_schedule = false;
  bool finite_boundaries = true;
  std::optional<double> variance_shape;

  bool hypotheses_hold() const noexcept {
    return epsilon_above_threshold && cyclic_schedule && beta > 0.0;
  }
};

/// Evaluates both right-hand sides of the time-averaged bias bound per site.
/// The threshold flag always compares epsilon against the 18 D^2 value.
BoundReport theorem2_bound(const PartitionStats& stats, double epsilon,
                           int delta, int radius, BoundOptions options = {});

/// alpha |K|_inf e^{beta |K|_inf} / sqrt(N). The constants are not known in
/// closed form; this evaluates the shape only, it is not a certified bound.
double theorem1_shape(std::size_t block_size_max, std::size_t particles,
                      double alpha, double beta);

/// Evaluates |a x - b/x| <= |a - b| x^2. Requires a, b > 0 and x >= 1.
bool lemma_minor_holds(double a, double b, double x);

struct LemmaFuzzReport {
  std::size_t samples = 0;
  std::size_t separated_samples = 0;    // |a-b|/max(a,b) >= min_gap
  std::size_t separated_violations = 0;
  std::size_t equal_samples = 0;        // a == b, x > 1
  std::size_t equal_violations = 0;
  /// (a, b, x) of the first violation among separated samples.
  std::optional<std::array<double, 3>> witness;
};

/// Draws a, b log-uniform on [1e-3, 1e3] and x log-uniform on [1, 10]
/// (half of the draws use b = a) and evaluates lemma_minor_holds on each.
LemmaFuzzReport lemma_minor_fuzz(std::size_t samples, std::uint64_t seed,
                                 double min_gap);

}  // namespace abpf
