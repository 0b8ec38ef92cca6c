#pragma once

#include <cmath>
#include <cstdint>

namespace ews {

// Counter-based deterministic generator: the SplitMix64 finalizer applied to
// a keyed counter. Draw i of stream s under seed k is a pure function of
// (k, s, i), so per-stream output never depends on evaluation order and the
// same seed reproduces the same bytes everywhere.
//
// uniform() and normal() index disjoint positions only if the caller keeps
// their counters apart; the convention here is one stream per purpose.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(mix(seed) ^ mix(stream * kGamma + 0x5851F42D4C957F2DULL))) {}

  std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + counter * kGamma); }

  // [0, 1)
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; draw n consumes counters 2n and 2n+1.
  double normal(std::uint64_t n) const {
    double u1 = (static_cast<double>(bits(2 * n) >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = static_cast<double>(bits(2 * n + 1) >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr double kTwoPi = 6.283185307179586476925286766559;

  static constexpr std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t key_;
};

}  // namespace ews
