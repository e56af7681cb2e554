#pragma once

#include <stdexcept>
#include <string>

namespace qpolar {

/// Trial-division primality; adequate for desk-scale alphabets.
constexpr bool is_prime(int n) noexcept {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Smallest prime factor of n >= 2.
constexpr int smallest_factor(int n) noexcept {
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

/// Input alphabet {0, ..., q-1}. All entropies are measured in base-q units.
class Alphabet {
 public:
  explicit Alphabet(int q) : q_(q), prime_(is_prime(q)) {
    if (q < 2) throw std::invalid_argument("alphabet size must be >= 2, got " + std::to_string(q));
  }

  int size() const noexcept { return q_; }
  bool prime() const noexcept { return prime_; }

  /// (a - b) mod q for a, b in range.
  int sub(int a, int b) const noexcept { return (a - b + q_) % q_; }
  int add(int a, int b) const noexcept { return (a + b) % q_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept { return a.q_ == b.q_; }

 private:
  int q_;
  bool prime_;
};

inline void require_same(const Alphabet& a, const Alphabet& b) {
  if (!(a == b))
    throw std::invalid_argument("alphabet mismatch: q=" + std::to_string(a.size()) +
                                " vs q=" + std::to_string(b.size()));
}

inline void require_prime(const Alphabet& a) {
  if (!a.prime())
    throw std::invalid_argument("operation requires a prime alphabet, got q=" + std::to_string(a.size()));
}

}  // namespace qpolar
