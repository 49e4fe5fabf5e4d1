#pragma once

#include <cstdint>

// Counter-based random streams. Every variate is a pure function of
// (seed, stream index, draw index), so Monte Carlo results are reproducible
// and independent of how work is split across threads: workers address
// disjoint index ranges instead of sharing mutable generator state.

namespace rcsp {

// splitmix64 output stage over seed + index * golden-gamma. Passes through
// avalanche; consecutive indices give decorrelated 64-bit words.
inline uint64_t counter_mix(uint64_t seed, uint64_t index) {
  uint64_t z = seed + index * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Maps 64 random bits to the open interval (0, 1), never returning 0 or 1.
inline double uniform_open01(uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Inverse standard normal CDF (Acklam's rational approximation, relative
// error below 1.2e-9). That accuracy is deliberate: the Monte Carlo oracles
// certify bounds at resolutions far coarser than the quantile bias this
// introduces, and the approximation needs no special-function support.
double inverse_normal_cdf(double p);

// One addressable stream of standard normal variates.
struct CounterStream {
  uint64_t key;

  double normal(uint64_t draw_index) const {
    return inverse_normal_cdf(uniform_open01(counter_mix(key, draw_index)));
  }
  double uniform(uint64_t draw_index) const {
    return uniform_open01(counter_mix(key, draw_index));
  }
};

inline CounterStream substream(uint64_t seed, uint64_t stream_index) {
  return CounterStream{counter_mix(seed, stream_index)};
}

}  // namespace rcsp
