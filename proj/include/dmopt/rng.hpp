#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dmopt {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ splitmix64(v));
}

inline std::uint64_t hash_combine(std::uint64_t h, std::string_view s) {
  std::uint64_t acc = 0xcbf29ce484222325ULL;  // FNV-1a over the bytes
  for (unsigned char c : s) {
    acc ^= c;
    acc *= 0x100000001b3ULL;
  }
  return hash_combine(h, acc);
}

/// Seeded generator with explicitly coded distributions, so a given seed
/// produces the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  bool coin() { return uniform() < 0.5; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dmopt
