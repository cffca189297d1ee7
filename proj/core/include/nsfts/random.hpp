#pragma once

#include <array>
#include <cstdint>

namespace nsfts {

/// Deterministic 64-bit generator: xoshiro256** seeded through SplitMix64.
///
/// Seeding: the four state words are four consecutive SplitMix64 outputs starting
/// from the user seed. uniform() takes the top 53 bits of next() scaled by 2^-53.
/// normal() uses one Box-Muller draw per call:
///   z = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
/// with u1 drawn before u2. The sequence depends only on the seed, so synthetic
/// datasets can be reproduced by any implementation following these steps.
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Standard normal.
  double normal() noexcept;

private:
  std::array<std::uint64_t, 4> s_{};
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace nsfts
