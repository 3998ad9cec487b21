#include "abpf/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "abpf/errors.hpp"

namespace abpf {

std::size_t configuration_count(std::span<const int> radices) noexcept {
  std::size_t total = 1;
  for (int r : radices) {
    const auto ur = static_cast<std::size_t>(r < 0 ? 0 : r);
    if (ur != 0 && total > std::numeric_limits<std::size_t>::max() / ur) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= ur;
  }
  return total;
}

namespace {

void check_radices(std::span<const int> radices) {
  for (int r : radices) {
    if (r < 1) throw InvalidArgument("alphabet sizes must be positive");
  }
}

}  // namespace

DenseDistribution::DenseDistribution(std::vector<int> radices,
                                     std::vector<double> probs)
    : radices_(std::move(radices)), probs_(std::move(probs)) {
  check_radices(radices_);
  if (probs_.size() != configuration_count(radices_)) {
    throw InvalidArgument("probability table has " +
                          std::to_string(probs_.size()) + " entries, expected " +
                          std::to_string(configuration_count(radices_)));
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgument("probabilities must be finite and non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InvalidArgument("probabilities sum to " + std::to_string(sum) +
                          ", not 1");
  }
}

DenseDistribution DenseDistribution::uniform(std::vector<int> radices) {
  check_radices(radices);
  const std::size_t n = configuration_count(radices);
  return DenseDistribution(std::move(radices),
                           std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DenseDistribution DenseDistribution::point_mass(std::vector<int> radices,
                                                std::span<const int> config) {
  auto out = uniform(std::move(radices));
  const std::size_t index = out.encode(config);
  std::fill(out.probs_.begin(), out.probs_.end(), 0.0);
  out.probs_[index] = 1.0;
  return out;
}

DenseDistribution DenseDistribution::from_weights(std::vector<int> radices,
                                                  std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("weights must be finite and non-negative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) throw InvalidArgument("weights sum to zero");
  for (double& w : weights) w /= sum;
  return DenseDistribution(std::move(radices), std::move(weights));
}

std::size_t DenseDistribution::encode(std::span<const int> config) const {
  if (config.size() != radices_.size()) {
    throw InvalidArgument("configuration has " + std::to_string(config.size()) +
                          " sites, expected " + std::to_string(radices_.size()));
  }
  std::size_t index = 0;
  for (std::size_t i = config.size(); i-- > 0;) {
    if (config[i] < 0 || config[i] >= radices_[i]) {
      throw InvalidArgument("site " + std::to_string(i) + " value " +
                            std::to_string(config[i]) + " outside alphabet");
    }
    index = index * static_cast<std::size_t>(radices_[i]) +
            static_cast<std::size_t>(config[i]);
  }
  return index;
}

void DenseDistribution::decode_into(std::size_t index,
                                    std::span<int> out) const noexcept {
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    const auto r = static_cast<std::size_t>(radices_[i]);
    out[i] = static_cast<int>(index % r);
    index /= r;
  }
}

Configuration DenseDistribution::decode(std::size_t index) const {
  if (index >= probs_.size()) throw InvalidArgument("configuration index out of range");
  Configuration out(radices_.size());
  decode_into(index, out);
  return out;
}

std::vector<double> DenseDistribution::site_marginal(int site) const {
  if (site < 0 || site >= site_count()) throw InvalidArgument("site out of range");
  std::size_t stride = 1;
  for (int i = 0; i < site; ++i) stride *= static_cast<std::size_t>(radices_[i]);
  const auto r = static_cast<std::size_t>(radices_[site]);
  std::vector<double> out(r, 0.0);
  for (std::size_t idx = 0; idx < probs_.size(); ++idx) {
    out[(idx / stride) % r] += probs_[idx];
  }
  return out;
}

}  // namespace abpf
