#pragma once

#include <cstdint>
#include <limits>

namespace evz {

/// splitmix64 stream. Every uniform draw consumes exactly one next_u64().
///
/// Satisfies UniformRandomBitGenerator so it can drive std distributions.
class DeterministicRng {
 public:
  using result_type = std::uint64_t;

  explicit DeterministicRng(std::uint64_t state = 0) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  std::uint64_t next_u64() noexcept {
    ++draws_;
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  result_type operator()() noexcept { return next_u64(); }

  /// [0, 1) with 53 bits of resolution.
  double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// a + (b - a) * u, u in [0, 1).
  double uniform(double a, double b) noexcept { return a + (b - a) * uniform01(); }

  /// Index in [0, n) from one uniform draw. n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) noexcept {
    const auto k = static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  std::uint64_t state() const noexcept { return state_; }

  /// Number of next_u64() calls since construction; used by draw-count audits.
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
};

/// The splitmix64 output finalizer applied to a single value.
std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

/// Independent per-sample stream derived from a master seed.
DeterministicRng child_rng(std::uint64_t master_seed, std::uint64_t sample_index) noexcept;

}  // namespace evz
