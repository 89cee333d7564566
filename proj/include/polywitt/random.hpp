#pragma once

#include <cstdint>
#include <random>

#include "polywitt/integer.hpp"

namespace polywitt {

inline constexpr std::uint64_t kDefaultSeed = 20200817;

/// Seeded deterministic source for every sampled check in the library.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = kDefaultSeed, long range = 5) : engine_(seed), range_(range) {}

  /// Uniform integer in [-range, range].
  Integer integer() { return integer(-range_, range_); }
  Integer integer(long lo, long hi) { return Integer(std::uniform_int_distribution<long>(lo, hi)(engine_)); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  bool coin() { return std::uniform_int_distribution<int>(0, 1)(engine_) == 1; }

  long range() const { return range_; }
  void set_range(long range) { range_ = range; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  long range_;
};

}  // namespace polywitt
