#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <vector>

#include "qpolar/alphabet.hpp"
#include "qpolar/random.hpp"

namespace qpolar {

/// Tolerances shared by the distribution and channel validators.
inline constexpr double kSumTolerance = 1e-12;
inline constexpr double kRenormTolerance = 1e-9;
inline constexpr double kBoundSlack = 1e-12;

/// Shannon entropy in nats of a nonnegative vector, with 0 log 0 = 0.
template <typename Derived>
typename Derived::Scalar entropy_nats(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  Scalar h(0);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar v = p(i);
    if (v > Scalar(0)) h -= v * std::log(v);
  }
  return h;
}

/// Cyclic convolution over Z_q: out(m) = sum_i p(i) r(m - i).
template <typename DerivedP, typename DerivedR>
Eigen::Matrix<typename DerivedP::Scalar, Eigen::Dynamic, 1> cyclic_convolve(
    const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedR>& r) {
  const Eigen::Index q = p.size();
  Eigen::Matrix<typename DerivedP::Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<typename DerivedP::Scalar, Eigen::Dynamic, 1>::Zero(q);
  for (Eigen::Index i = 0; i < q; ++i) {
    const auto pi = p(i);
    if (pi == 0) continue;
    for (Eigen::Index m = 0; m < q; ++m) out(m) += pi * r((m - i + q) % q);
  }
  return out;
}

/// Probability mass function over Z_q. Immutable after construction.
class Dist {
 public:
  /// Validates nonnegativity and normalization. Sums off by at most 1e-12
  /// are kept verbatim, sums off by at most 1e-9 are renormalized, anything
  /// else is rejected.
  Dist(Alphabet alphabet, Eigen::VectorXd mass);
  Dist(Alphabet alphabet, std::initializer_list<double> mass);

  static Dist uniform(Alphabet alphabet);
  static Dist unit(Alphabet alphabet, int i);
  /// Uniform on the simplex.
  static Dist random(Alphabet alphabet, Engine& eng);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int size() const noexcept { return alphabet_.size(); }
  const Eigen::VectorXd& mass() const noexcept { return mass_; }
  double operator[](int i) const { return mass_(i); }

  std::vector<double> to_vector() const { return {mass_.data(), mass_.data() + mass_.size()}; }

 private:
  Alphabet alphabet_;
  Eigen::VectorXd mass_;
};

/// Base-q entropy in [0, 1].
double entropy(const Dist& p);

/// p_i(m) = p(m - i).
Dist cyclic_shift(const Dist& p, int i);

Dist cyclic_convolve(const Dist& p, const Dist& r);

double l1_distance(const Dist& p, const Dist& r);

/// Converts a raw base-q entropy to [0, 1]; tiny overshoots are clamped,
/// anything beyond 1e-9 outside the range throws std::logic_error.
double clamp_unit(double value, const char* what);

struct Lemma3Result {
  double lhs;  ///< ||p - unif||_1
  double rhs;  ///< (1 - H(p)) / (q log_q e)
  bool holds;
};

/// L1 distance to uniform against the entropy deficit.
Lemma3Result lemma3_check(const Dist& p);

struct Lemma4Result {
  double min_shift_distance;  ///< min_{i != j} ||p_i - p_j||_1
  double bound;               ///< (1 - H(p)) / (2 q^2 (q-1) log_q e)
  bool holds;
};

/// Separation of cyclic shifts. Requires a prime alphabet.
Lemma4Result lemma4_check(const Dist& p);

struct Lemma5Result {
  double gain;  ///< H(p * r) - H(r)
  bool hypotheses_met;  ///< H(p) >= eta and H(r) <= 1 - eta
};

/// Entropy gain of convolution. Requires a common prime alphabet and eta > 0.
Lemma5Result lemma5_check(const Dist& p, const Dist& r, double eta);

}  // namespace qpolar
