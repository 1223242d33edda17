#pragma once

#include <cstdint>

namespace sched {

// splitmix64: stable across platforms, good enough for experiment seeding.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic stream of 64-bit values (splitmix64 sequence).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1).
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1].
  double next_unit_positive() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Uniform on [0,1] (both endpoints reachable).
  double next_unit_closed() {
    return double(next_u64() >> 11) * (1.0 / 9007199254740991.0);
  }

  // Uniform integer in [0, n); n > 0.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

// Order-independent per-key draw in [0,1): hashing (seed, key) makes the
// outcome independent of how many other draws happened before it.
inline double unit_from_keys(std::uint64_t seed, std::uint64_t key) {
  std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(key * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
  return double(h >> 11) * 0x1.0p-53;
}

}  // namespace sched
