#pragma once

#include <cmath>
#include <cstdint>

namespace repi {

// splitmix64 stream. Hand-rolled so that seeded runs are reproducible
// byte-for-byte across platforms; the std:: distributions do not pin their
// algorithms.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform on the open interval (0,1)
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) *
           (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential(double scale) { return -scale * std::log(uniform01()); }

  double normal() {
    // Box-Muller without a cached spare; call counts stay predictable.
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.28318530717958647692529 * u2);
  }

  // Decorrelated substream seed for (seed, stream-index) pairs; cell results
  // must not depend on scheduling order.
  static uint64_t mix(uint64_t seed, uint64_t stream) {
    SplitMix64 s(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return s.next_u64();
  }

 private:
  uint64_t state_;
};

}  // namespace repi
