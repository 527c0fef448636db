#pragma once

#include <cstdint>
#include <complex>

namespace ncg {

// xoshiro256++ seeded through splitmix64. Deterministic across platforms,
// which the CLI relies on for reproducible output. Counter-based substreams
// keep per-trial results independent of how many trials run or in what order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  // Substream i of a logical stream rooted at `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
    return Rng(splitmix64(x) ^ index);
  }

  std::uint64_t next_u64() {
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

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform element of {0, ..., m-1}.
  std::uint64_t below(std::uint64_t m) { return next_u64() % m; }

  bool coin() { return (next_u64() >> 63) != 0; }

  double normal() {
    // Box-Muller; fine for test-grade sampling.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // Uniform fourth root of unity.
  std::complex<double> fourth_root() {
    switch (next_u64() & 3u) {
      case 0: return {1.0, 0.0};
      case 1: return {-1.0, 0.0};
      case 2: return {0.0, 1.0};
      default: return {0.0, -1.0};
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t s_[4];
};

}  // namespace ncg
