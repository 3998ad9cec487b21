#include "abpf/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "abpf/errors.hpp"
#include "abpf/exact.hpp"

namespace abpf {

Spread spatial_spread(std::span<const double> profile) {
  if (profile.empty()) throw InvalidArgument("spread of an empty profile");
  const auto [lo, hi] = std::minmax_element(profile.begin(), profile.end());
  double mean = 0.0;
  for (double x : profile) mean += x;
  mean /= static_cast<double>(profile.size());
  double var = 0.0;
  for (double x : profile) var += (x - mean) * (x - mean);
  var /= static_cast<double>(profile.size());
  return {*hi - *lo, std::sqrt(var)};
}

double rms_norm_estimate(std::span<const DenseDistribution> runs,
                         const DenseDistribution& reference) {
  if (runs.empty()) throw InvalidArgument("need at least one replicate");
  const std::size_t k = reference.size();
  if (k > kMaxTestSpace) {
    throw CapExceeded("local test-function space too large", k, kMaxTestSpace);
  }
  for (const auto& r : runs) {
    if (r.radices() != reference.radices()) {
      throw InvalidArgument("replicate table does not match the reference");
    }
  }
  // Second-moment matrix of the deviations.
  std::vector<double> m(k * k, 0.0);
  for (const auto& r : runs) {
    for (std::size_t a = 0; a < k; ++a) {
      const double da = r[a] - reference[a];
      for (std::size_t b = 0; b < k; ++b) {
        m[a * k + b] += da * (r[b] - reference[b]);
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(runs.size());
  for (double& x : m) x *= inv;

  double best = 0.0;
  const std::size_t patterns = std::size_t{1} << (k - 1);
  std::vector<double> f(k);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    f[0] = 1.0;
    for (std::size_t a = 1; a < k; ++a) f[a] = (mask >> (a - 1)) & 1U ? -1.0 : 1.0;
    double q = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b < k; ++b) row += m[a * k + b] * f[b];
      q += f[a] * row;
    }
    best = std::max(best, q);
  }
  return std::sqrt(std::max(best, 0.0));
}

double rms_norm_estimate(std::span<const BlockedEnsemble* const> runs,
                         const DenseDistribution& reference,
                         const VertexSet& sites) {
  std::size_t local = 1;
  for (Vertex v : sites) {
    if (v < 0 || v >= reference.site_count()) {
      throw InvalidArgument("site out of range");
    }
    local *= static_cast<std::size_t>(reference.radices()[static_cast<std::size_t>(v)]);
    if (local > kMaxTestSpace) {
      throw CapExceeded("local test-function space too large", local,
                        kMaxTestSpace);
    }
  }
  std::vector<DenseDistribution> tables;
  tables.reserve(runs.size());
  for (const BlockedEnsemble* e : runs) {
    tables.push_back(empirical_local_measure(*e, sites));
  }
  return rms_norm_estimate(tables, block_marginal(reference, sites));
}

std::vector<double> trailing_window_mean(
    const std::vector<std::vector<double>>& series, std::size_t window) {
  if (series.empty()) throw InvalidArgument("empty series");
  if (window == 0 || window > series.size()) {
    throw InvalidArgument("window must be in 1..series length");
  }
  const std::size_t sites = series.back().size();
  std::vector<double> out(sites, 0.0);
  for (std::size_t k = series.size() - window; k < series.size(); ++k) {
    for (std::size_t v = 0; v < sites; ++v) out[v] += series[k][v];
  }
  for (double& x : out) x /= static_cast<double>(window);
  return out;
}

ErrorReport bias_profile(const std::vector<DenseDistribution>& exact,
                         const std::vector<DenseDistribution>& blocked,
                         std::size_t window) {
  if (exact.size() != blocked.size() || exact.empty()) {
    throw InvalidArgument("filter runs must cover the same times");
  }
  const std::size_t horizon = exact.size() - 1;
  if (window == 0 || window > horizon) {
    throw InvalidArgument("window must satisfy 1 <= m <= n");
  }
  ErrorReport rep;
  rep.window = window;
  const int sites = exact.front().site_count();
  rep.bias.assign(exact.size(), std::vector<double>(static_cast<std::size_t>(sites)));
  for (std::size_t k = 0; k < exact.size(); ++k) {
    for (Vertex v = 0; v < sites; ++v) {
      rep.bias[k][static_cast<std::size_t>(v)] = local_tv(exact[k], blocked[k], {v});
    }
  }
  rep.window_bias = trailing_window_mean(rep.bias, window);
  rep.window_spread = spatial_spread(rep.window_bias);
  return rep;
}

ErrorReport bias_profile(const FieldModel& model, const DenseDistribution& mu,
                         const std::vector<Configuration>& observations,
                         const PartitionSchedule& schedule, std::size_t window,
                         const ExactLimits& limits) {
  return bias_profile(exact_filter_run(model, mu, observations, limits),
                      blocked_filter_run(model, mu, observations, schedule, limits),
                      window);
}

}  // namespace abpf
