#pragma once

#include <cstdint>

namespace tailscope {

// splitmix64 step; used for seeding and seed mixing.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic per-trial seed: a fixed splitmix64 chain over the study
// coordinates, independent of execution order and platform.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t dist_index,
                              std::uint64_t n, std::uint64_t trial) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ dist_index;
  h = splitmix64(s);
  s = h ^ n;
  h = splitmix64(s);
  s = h ^ trial;
  return splitmix64(s);
}

// xoshiro256++ (Blackman & Vigna), seeded through splitmix64. Small, fast,
// and bit-reproducible across platforms.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix64(seed);
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

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace tailscope
