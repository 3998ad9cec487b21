#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abpf {

/// Bad parameter or malformed input (bad vertex, partition, table, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact or brute-force computation would exceed its configured size cap.
class CapExceeded : public std::length_error {
 public:
  CapExceeded(const std::string& what_computation, std::size_t requested,
              std::size_t cap)
      : std::length_error(what_computation + ": requires " +
                          std::to_string(requested) + " entries, cap is " +
                          std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// The correction normalizer vanished: the observation has zero likelihood
/// under the predicted law.
class DegenerateEvidence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every particle in a block received zero likelihood.
class DegenerateBlock : public std::runtime_error {
 public:
  explicit DegenerateBlock(std::size_t block)
      : std::runtime_error("all particle weights are zero in block " +
                           std::to_string(block)),
        block_(block) {}

  std::size_t block() const noexcept { return block_; }

 private:
  std::size_t block_;
};

/// A conditional law was requested on a zero-probability event.
class DegenerateConditioning : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bound parameters outside the domain where the formula is defined.
class BoundDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace abpf
