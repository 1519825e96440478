#include "snrlab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace snrlab {
namespace {

uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

SeededRng::SeededRng(uint64_t seed, uint64_t stream_id) : seed_(seed), stream_(stream_id) {
  // Distinct (seed, stream) pairs map to unrelated xoshiro states; the mixer
  // guarantees a nonzero state even for seed = stream = 0.
  uint64_t x = seed;
  state_[0] = splitmix64(x);
  state_[1] = splitmix64(x);
  x ^= 0x6a09e667f3bcc909ULL + stream_id;
  state_[2] = splitmix64(x);
  state_[3] = splitmix64(x);
}

uint64_t SeededRng::next_u64() {
  // xoshiro256++
  const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SeededRng::next_unit() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

double SeededRng::next_gaussian() {
  // Box-Muller without caching: exactly two uniforms per call, so stream
  // positions stay predictable for substream reproducibility.
  double u1 = next_unit();
  if (u1 == 0.0) u1 = 0x1.0p-53;
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

long SeededRng::next_poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("next_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // Multiplicative inversion; expected iterations = mean + 1.
    const double limit = std::exp(-mean);
    long k = 0;
    double p = 1.0;
    do {
      p *= next_unit();
      ++k;
    } while (p > limit);
    return k - 1;
  }
  // Hormann's PTRS transformed rejection; constants valid for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = next_unit() - 0.5;
    const double v = next_unit();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return (long)k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0))
      return (long)k;
  }
}

}  // namespace snrlab
