#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace quset {

/// Deterministic RNG for seeded suites. mt19937_64 output is specified by
/// the standard, and all derived draws avoid std distributions, so a seed
/// reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t u64() { return engine_(); }

  /// Uniform draw from {0, ..., n-1}; n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  int int_in(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return engine_() & 1; }

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Stable per-case seed derivation (splitmix64 finalizer). Case i of a
/// suite run with seed s uses mix_seed(s + i), so a failure at case i is
/// replayable as a one-case run with seed s + i.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace quset
