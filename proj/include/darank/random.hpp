#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace darank {

// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so sampling that must be reproducible across toolchains goes through here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Indices of `n` distinct elements drawn uniformly from [0, size), in draw order.
  std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(size - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(n);
    return idx;
  }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with an item index (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace darank
