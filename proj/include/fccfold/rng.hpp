#pragma once

#include <cstdint>

namespace fccfold {

// xoshiro256** seeded through splitmix64.  Self-contained so that streams are
// reproducible across standard libraries and platforms; all randomness in a
// run flows through this type.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  // Independent stream derived from (seed, stream); used to give each
  // generation of a run its own deterministic stream.
  Rng(std::uint64_t seed, std::uint64_t stream) {
    reseed(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, n).  n must be > 0.
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  void reseed(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      s = z ^ (z >> 31);
    }
  }

  std::uint64_t s_[4];
};

}  // namespace fccfold
