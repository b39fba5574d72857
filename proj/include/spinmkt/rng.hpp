#pragma once

#include <cmath>
#include <cstdint>

namespace spinmkt {

// splitmix64 step; used to expand seeds and derive child streams.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with hand-rolled sampling primitives. std:: distributions are
// implementation-defined, so everything that touches randomness is pinned here
// to keep output byte-identical across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased uniform in [0, n) by rejection from the top of the range.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [0,1) with 53 random mantissa bits.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Exponential(1); log1p form is exact at u=0 and never overflows.
  double exponential() { return -std::log1p(-u01()); }

  // Independent stream for a parallel cell; pure function of (seed, stream).
  Rng child(std::uint64_t stream) const {
    std::uint64_t x = seed_ ^ (0xd1342543de82ef95ULL * (stream + 1));
    return Rng(splitmix64(x));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace spinmkt
