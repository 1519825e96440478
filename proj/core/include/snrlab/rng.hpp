#pragma once

#include <cstdint>

namespace snrlab {

// Deterministic counter-keyed generator: xoshiro256++ seeded through
// splitmix64 from a (seed, stream_id) pair. Identical pairs reproduce
// identical sequences bit for bit on every platform; distinct stream ids
// give statistically independent streams, which is what the samplers rely
// on when work is sharded across exposures or pixels.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53-bit resolution.
  double next_unit();

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double next_gaussian();

  // Poisson draw. Sequential inversion below mean 30, transformed
  // rejection (PTRS) above; both are exact samplers.
  long next_poisson(double mean);

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace snrlab
