#pragma once

#include <cstdint>

namespace hemsim {

/// xoshiro256** (Blackman & Vigna), state seeded by four successive
/// SplitMix64 outputs of the user seed. Every optimizer run owns exactly one
/// stream and consumes it in a fixed order, so results depend only on the
/// seed and the inputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform integer in [0, bound) by rejection sampling; bound must be > 0.
  /// Consumes one or more draws.
  std::uint64_t below(std::uint64_t bound);

  /// Bernoulli(p) using the top 53 bits of one draw: true iff u < p.
  /// Always consumes exactly one draw.
  bool chance(double p);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace hemsim
