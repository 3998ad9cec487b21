#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace abpf {

/// A joint state (or observation) assignment, one entry per site.
using Configuration = std::vector<int>;

/// Number of joint configurations for the given per-site radices, saturating
/// at SIZE_MAX on overflow.
std::size_t configuration_count(std::span<const int> radices) noexcept;

/// Exact probability table over a product of finite alphabets.
///
/// Configurations are encoded mixed-radix with site 0 least significant:
/// index = x0 + r0 * (x1 + r1 * (x2 + ...)). The encoding is fixed so that
/// dumped tables are comparable across runs.
class DenseDistribution {
 public:
  /// Validates non-negativity and that entries sum to 1 within 1e-10.
  DenseDistribution(std::vector<int> radices, std::vector<double> probs);

  static DenseDistribution uniform(std::vector<int> radices);
  static DenseDistribution point_mass(std::vector<int> radices,
                                      std::span<const int> config);
  /// Normalizes non-negative weights; throws InvalidArgument if they sum
  /// to zero.
  static DenseDistribution from_weights(std::vector<int> radices,
                                        std::vector<double> weights);

  const std::vector<int>& radices() const noexcept { return radices_; }
  int site_count() const noexcept { return static_cast<int>(radices_.size()); }
  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t index) const noexcept { return probs_[index]; }

  std::size_t encode(std::span<const int> config) const;
  Configuration decode(std::size_t index) const;
  void decode_into(std::size_t index, std::span<int> out) const noexcept;

  /// Site marginal as a plain probability vector.
  std::vector<double> site_marginal(int site) const;

 private:
  std::vector<int> radices_;
  std::vector<double> probs_;
};

}  // namespace abpf
