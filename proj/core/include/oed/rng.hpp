#ifndef OED_RNG_HPP
#define OED_RNG_HPP

#include <cstdint>
#include <vector>

namespace oed {

// splitmix64: tiny, seedable, identical output on every platform.
// Used wherever reproducibility across runs and machines matters
// (std::mt19937 distributions are not bit-stable across standard libraries).
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }
};

}  // namespace oed

#endif
