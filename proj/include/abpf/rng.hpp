#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace abpf {

/// What a random stream is used for; part of the stream key.
enum class StreamPurpose : std::uint64_t {
  kSimulateState = 1,
  kSimulateObservation = 2,
  kInitialize = 3,
  kResample = 4,
  kPropagate = 5,
  kSampling = 6,
  kFuzz = 7,
};

/// Counter-based generator: the n-th output is the SplitMix64 finalizer
/// applied to key + n * golden-gamma. Streams are cheap to create, so one is
/// derived per (purpose, replicate, time, index) instead of sharing state.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Derives independent streams from a master seed. Identical arguments give
/// identical streams regardless of call order or thread.
class RngPolicy {
 public:
  explicit RngPolicy(std::uint64_t master_seed) noexcept
      : master_seed_(master_seed) {}

  std::uint64_t master_seed() const noexcept { return master_seed_; }

  RandomStream stream(StreamPurpose purpose, std::uint64_t replicate,
                      std::uint64_t time, std::uint64_t index) const noexcept;

 private:
  std::uint64_t master_seed_;
};

/// A policy bound to one replicate of a run.
struct ReplicateStreams {
  RngPolicy policy{0};
  std::uint64_t replicate = 0;

  RandomStream stream(StreamPurpose purpose, std::uint64_t time,
                      std::uint64_t index) const noexcept {
    return policy.stream(purpose, replicate, time, index);
  }
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Inverse-CDF draw from a probability row given u in [0, 1). Rounding
/// slack at the top falls on the last index with positive mass.
std::size_t sample_categorical(std::span<const double> probs, double u);

}  // namespace abpf
