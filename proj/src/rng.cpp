#include "evz/rng.hpp"

namespace evz {

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

DeterministicRng child_rng(std::uint64_t master_seed, std::uint64_t sample_index) noexcept {
  return DeterministicRng(splitmix64_mix(master_seed ^ ((sample_index + 1) * 0x9E3779B97F4A7C15ull)));
}

}  // namespace evz
