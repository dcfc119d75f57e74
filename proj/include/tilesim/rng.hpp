#pragma once

#include <array>
#include <cstdint>

namespace tilesim {

// splitmix64 finalizer (Vigna / Steele et al.); used for seeding and for
// deriving independent per-job streams from a master seed.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stream seed for job `index` under `master`. Jobs get statistically
// independent streams and the mapping is a pure function, so sweeps are
// bit-reproducible regardless of scheduling.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull));
}

// xoshiro256++ (Blackman & Vigna, public domain reference implementation).
// Small, fast, and fixed for the life of the project: traces replayed from
// the same seed must be bit-identical across releases.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) {
    std::uint64_t z = seed;
    for (auto& w : state_) w = mix64(z++);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0,n), n >= 1. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    using u128 = unsigned __int128;
    std::uint64_t x = next();
    u128 m = static_cast<u128>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next();
        m = static_cast<u128>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace tilesim
