#include "abpf/rng.hpp"

namespace abpf {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::result_type RandomStream::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

RandomStream RngPolicy::stream(StreamPurpose purpose, std::uint64_t replicate,
                               std::uint64_t time,
                               std::uint64_t index) const noexcept {
  std::uint64_t k = mix64(master_seed_ + kGamma);
  k = mix64(k ^ (static_cast<std::uint64_t>(purpose) * kGamma));
  k = mix64(k + replicate * 0xd1b54a32d192ed03ULL);
  k = mix64(k ^ (time * 0xaef17502108ef2d9ULL));
  k = mix64(k + index * 0xf1357aea2e62a9c5ULL);
  return RandomStream(k);
}

std::size_t sample_categorical(std::span<const double> probs, double u) {
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace abpf
