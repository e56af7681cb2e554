#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace qpolar {

/// mt19937_64 is fully specified by the standard; the distributions in <random>
/// are not, so sampling helpers below consume raw engine output directly.
using Engine = std::mt19937_64;

/// splitmix64 finalizer; derives independent stream seeds from (seed, index).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n).
inline int uniform_index(Engine& eng, int n) {
  // rejection sampling, no modulo bias
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = Engine::max() - Engine::max() % range;
  std::uint64_t v;
  do {
    v = eng();
  } while (v >= limit);
  return static_cast<int>(v % range);
}

/// Fair coin.
inline bool coin(Engine& eng) { return (eng() >> 63) != 0; }

/// Uniform point on the (n-1)-simplex (Dirichlet with unit concentration).
inline std::vector<double> simplex_point(Engine& eng, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& v : w) {
    v = -std::log1p(-uniform01(eng));
    total += v;
  }
  if (total <= 0.0) {
    w.assign(w.size(), 1.0 / n);
    return w;
  }
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace qpolar
