#pragma once

#include <cmath>
#include <cstdint>

namespace vap {

// splitmix64: statistically solid 64-bit mixer, used both as a stream
// seeder and as a stateless per-event hash so classifiers stay pure
// given (input, seed).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return splitmix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

// Maps a 64-bit hash to a double in [0, 1).
inline double hash_to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);
}

// Small deterministic generator for sequential draws (saccade sampling,
// scenario noise). Not thread-safe by design: each consumer owns its
// stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0xD1B54A32D192ED03ULL)) {}

  std::uint64_t next_u64() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t x = state_;
    x ^= x >> 32;
    return splitmix64(x);
  }

  // in [0, 1)
  double next_double() { return hash_to_unit(next_u64()); }

  // in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // in [0, n)
  std::uint32_t next_below(std::uint32_t n) {
    return n == 0 ? 0 : static_cast<std::uint32_t>(next_u64() % n);
  }

  // standard normal via Box-Muller
  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace vap
