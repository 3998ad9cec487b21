#include "abpf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "abpf/errors.hpp"
#include "abpf/rng.hpp"

namespace abpf {

namespace {

double constant_value(BoundConstants c) { return static_cast<double>(c); }

}  // namespace

double epsilon_threshold(int delta, BoundConstants constants) {
  if (delta < 1) throw InvalidArgument("Delta must be positive");
  const double d = static_cast<double>(delta);
  return std::pow(1.0 - 1.0 / (constant_value(constants) * d * d),
                  1.0 / (2.0 * d));
}

double theorem2_beta(double epsilon, int delta, int radius,
                     BoundConstants constants) {
  if (delta < 1 || radius < 1) throw InvalidArgument("Delta and r must be positive");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw BoundDomainError("epsilon must lie in (0, 1]");
  }
  const double d = static_cast<double>(delta);
  const double gap = 1.0 - std::pow(epsilon, 2.0 * d);
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  const double arg = constant_value(constants) * d * d * gap;
  if (arg >= 1.0) {
    throw BoundDomainError(
        "beta <= 0: " + std::to_string(static_cast<int>(constants)) +
        " D^2 (1 - eps^{2D}) = " + std::to_string(arg) +
        " >= 1 (epsilon " + std::to_string(epsilon) + " is not above the threshold)");
  }
  return -std::log(arg) / (2.0 * radius);
}

BoundReport theorem2_bound(const PartitionStats& stats, double epsilon,
                           int delta, int radius, BoundOptions options) {
  BoundReport r;
  r.epsilon = epsilon;
  r.delta = delta;
  r.radius = radius;
  r.partition_count = stats.partition_count;
  r.epsilon0 = epsilon_threshold(delta, BoundConstants::kTheorem);
  r.epsilon_above_threshold = epsilon > r.epsilon0;
  r.cyclic_schedule = stats.cyclic;
  r.finite_boundaries = !stats.infinite_boundary;
  r.beta = theorem2_beta(epsilon, delta, radius, options.constants);

  const double gap = 1.0 - std::pow(epsilon, 2.0 * delta);
  if (std::isinf(r.beta) || gap <= 0.0) {
    r.prefactor = 0.0;
  } else {
    const double e = std::exp(-r.beta);
    r.prefactor = 8.0 * e / (1.0 - e) * gap;
  }

  const std::size_t n = stats.theta_m.size();
  r.vartheta_m = std::isinf(r.beta) ? std::vector<double>(n, 0.0)
                                    : vartheta_at(stats, r.beta);
  r.first_rhs.resize(n);
  r.second_rhs.resize(n);
  const double m = static_cast<double>(stats.partition_count);
  for (std::size_t v = 0; v < n; ++v) {
    r.first_rhs[v] = r.prefactor * r.vartheta_m[v];
    if (r.prefactor == 0.0) {
      r.second_rhs[v] = 0.0;
      continue;
    }
    const Distance hi = stats.delta_d[v];
    const Distance lo = stats.nabla_d[v];
    if (!is_finite(lo)) {
      // Every boundary is empty: vartheta_m = 0, and so is the limit here.
      r.second_rhs[v] = 0.0;
    } else if (!is_finite(hi)) {
      // Mixed finite/infinite distances: the spread factor vanishes.
      r.second_rhs[v] = r.prefactor;
    } else {
      const double spread = std::exp(-r.beta * static_cast<double>(hi - lo));
      const double theta = options.theta_extra_inverse_m
                               ? stats.theta_m[v] / m
                               : stats.theta_m[v];
      r.second_rhs[v] = r.prefactor * std::exp(-r.beta * spread * theta);
    }
  }
  return r;
}

double theorem1_shape(std::size_t block_size_max, std::size_t particles,
                      double alpha, double beta) {
  if (particles == 0) throw InvalidArgument("particle count must be positive");
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw InvalidArgument("alpha and beta must be positive");
  }
  const double k = static_cast<double>(block_size_max);
  return alpha * k * std::exp(beta * k) /
         std::sqrt(static_cast<double>(particles));
}

bool lemma_minor_holds(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 1.0) || !std::isfinite(x)) {
    throw InvalidArgument("lemma needs a, b > 0 and finite x >= 1");
  }
  return std::abs(a * x - b / x) <= std::abs(a - b) * x * x;
}

LemmaFuzzReport lemma_minor_fuzz(std::size_t samples, std::uint64_t seed,
                                 double min_gap) {
  const RngPolicy policy(seed);
  auto rng = policy.stream(StreamPurpose::kFuzz, 0, 0, 0);
  const double log_lo = std::log(1e-3);
  const double log_span = std::log(1e3) - log_lo;
  const double log_x_span = std::log(10.0);
  LemmaFuzzReport rep;
  rep.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const double a = std::exp(log_lo + log_span * rng.uniform());
    const double x = std::exp(log_x_span * rng.uniform());
    if (i % 2 == 1) {
      if (!(x > 1.0)) continue;
      ++rep.equal_samples;
      if (!lemma_minor_holds(a, a, x)) ++rep.equal_violations;
      continue;
    }
    const double b = std::exp(log_lo + log_span * rng.uniform());
    if (std::abs(a - b) / std::max(a, b) < min_gap) continue;
    ++rep.separated_samples;
    if (!lemma_minor_holds(a, b, x)) {
      ++rep.separated_violations;
      if (!rep.witness) rep.witness = std::array<double, 3>{a, b, x};
    }
  }
  return rep;
}

}  // namespace abpf
