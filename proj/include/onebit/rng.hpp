#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace onebit {

/// A keyed random stream.
///
/// Every stream carries a 64-bit key. Child streams are derived from the key
/// and a tag only, never from the parent's consumed state, so the stream used
/// by trial `t` of experiment `e` is the same no matter which thread runs it or
/// in what order trials are scheduled.
class Rng {
 public:
  explicit Rng(std::uint64_t key);

  std::uint64_t key() const noexcept { return key_; }

  Rng derive(std::uint64_t tag) const;
  Rng derive(std::string_view purpose) const;
  Rng derive(std::string_view purpose, std::uint64_t index) const;

  double normal();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t index(std::size_t n);
  /// +1 or -1 with equal probability.
  int rademacher();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t hash_tag(std::string_view purpose) noexcept;

}  // namespace onebit
