#pragma once

#include <cstddef>
#include <cstdint>

namespace alsel {

/// SplitMix64: a 64-bit Weyl counter passed through a fixed mixing function
/// (Steele, Lea & Flood 2014). State advances by 0x9E3779B97F4A7C15 per draw.
///
/// All derived draws (bounded integers, uniforms, normals) are implemented
/// here rather than through <random> distributions, whose output is
/// implementation-defined. Identical seeds give identical streams on every
/// platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;

  /// Uniform integer in [0, bound), unbiased via rejection. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal deviate (Box-Muller, one value per two uniforms).
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

/// Derives an independent sub-seed from (seed, stream) by one SplitMix64 mix.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace alsel
