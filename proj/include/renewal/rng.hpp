// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace renewal::engine {

// SplitMix64 state update + output mix (Steele, Lea & Flood 2014).
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// One reproducible random substream.
///
/// Substream derivation contract: the state of substream `replicate` is a
/// pure function of (base_seed, replicate) — four SplitMix64 outputs seeded
/// with mix(base_seed XOR mix(replicate)) feed a xoshiro256++ generator
/// (Blackman & Vigna 2019).  Replicates can therefore run in any order, on
/// any number of threads, and always see the same bits.
class RngStream {
 public:
  /// Algorithm identifier recorded in ensemble outputs.
  static constexpr const char* kAlgorithm = "xoshiro256++/splitmix64-substream";

  RngStream(std::uint64_t base_seed, std::uint64_t replicate) {
    std::uint64_t r = replicate;
    std::uint64_t key = base_seed ^ splitmix64_next(r);
    s_[0] = splitmix64_next(key);
    s_[1] = splitmix64_next(key);
    s_[2] = splitmix64_next(key);
    s_[3] = splitmix64_next(key);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro needs nonzero state
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

  /// Uniform double strictly inside (0,1); safe to pass to log().
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace renewal::engine
