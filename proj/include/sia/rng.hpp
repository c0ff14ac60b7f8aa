#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace sia {

/// Seeded generator. All derived draws are built from raw 64-bit outputs of
/// the standard-defined mt19937_64 sequence, so identical seeds reproduce
/// identical results on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform int in [0, n).
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  bool chance(double p) { return unit() < p; }

  /// Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> permutation(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(below(i + 1))]);
    }
    return perm;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sia
