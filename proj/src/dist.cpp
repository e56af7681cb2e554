#include "qpolar/dist.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace qpolar {

namespace {

Eigen::VectorXd validated(const Alphabet& alphabet, Eigen::VectorXd mass) {
  if (mass.size() != alphabet.size())
    throw std::invalid_argument("distribution has " + std::to_string(mass.size()) +
                                " entries, alphabet size is " + std::to_string(alphabet.size()));
  for (Eigen::Index i = 0; i < mass.size(); ++i) {
    if (!std::isfinite(mass(i)) || mass(i) < 0.0)
      throw std::invalid_argument("distribution entry " + std::to_string(i) + " is negative or not finite");
  }
  const double total = mass.sum();
  const double dev = std::abs(total - 1.0);
  if (dev > kRenormTolerance)
    throw std::invalid_argument("distribution sums to " + std::to_string(total));
  if (dev > kSumTolerance) mass /= total;
  return mass;
}

}  // namespace

Dist::Dist(Alphabet alphabet, Eigen::VectorXd mass)
    : alphabet_(alphabet), mass_(validated(alphabet, std::move(mass))) {}

Dist::Dist(Alphabet alphabet, std::initializer_list<double> mass)
    : Dist(alphabet, Eigen::Map<const Eigen::VectorXd>(mass.begin(), static_cast<Eigen::Index>(mass.size()))) {}

Dist Dist::uniform(Alphabet alphabet) {
  return Dist(alphabet, Eigen::VectorXd::Constant(alphabet.size(), 1.0 / alphabet.size()));
}

Dist Dist::unit(Alphabet alphabet, int i) {
  if (i < 0 || i >= alphabet.size()) throw std::out_of_range("unit mass index out of range");
  Eigen::VectorXd m = Eigen::VectorXd::Zero(alphabet.size());
  m(i) = 1.0;
  return Dist(alphabet, std::move(m));
}

Dist Dist::random(Alphabet alphabet, Engine& eng) {
  const auto w = simplex_point(eng, alphabet.size());
  return Dist(alphabet, Eigen::Map<const Eigen::VectorXd>(w.data(), alphabet.size()));
}

double clamp_unit(double value, const char* what) {
  if (value < -kRenormTolerance || value > 1.0 + kRenormTolerance || std::isnan(value))
    throw std::logic_error(std::string(what) + " out of [0,1]: " + std::to_string(value));
  return std::clamp(value, 0.0, 1.0);
}

double entropy(const Dist& p) {
  return clamp_unit(entropy_nats(p.mass()) / std::log(static_cast<double>(p.size())), "entropy");
}

Dist cyclic_shift(const Dist& p, int i) {
  const int q = p.size();
  if (i < 0 || i >= q) throw std::out_of_range("shift " + std::to_string(i) + " outside [0," + std::to_string(q) + ")");
  Eigen::VectorXd out(q);
  for (int m = 0; m < q; ++m) out(m) = p[(m - i + q) % q];
  return Dist(p.alphabet(), std::move(out));
}

Dist cyclic_convolve(const Dist& p, const Dist& r) {
  require_same(p.alphabet(), r.alphabet());
  return Dist(p.alphabet(), cyclic_convolve(p.mass(), r.mass()));
}

double l1_distance(const Dist& p, const Dist& r) {
  require_same(p.alphabet(), r.alphabet());
  return (p.mass() - r.mass()).cwiseAbs().sum();
}

Lemma3Result lemma3_check(const Dist& p) {
  const double q = p.size();
  const double lhs = l1_distance(p, Dist::uniform(p.alphabet()));
  // log_q e = 1 / ln q
  const double rhs = (1.0 - entropy(p)) * std::log(q) / q;
  return {lhs, rhs, lhs >= rhs - kBoundSlack};
}

Lemma4Result lemma4_check(const Dist& p) {
  require_prime(p.alphabet());
  const int q = p.size();
  // ||p_i - p_j||_1 depends only on m = j - i.
  double min_dist = std::numeric_limits<double>::infinity();
  for (int m = 1; m < q; ++m) {
    double d = 0.0;
    for (int k = 0; k < q; ++k) d += std::abs(p[k] - p[(k + m) % q]);
    min_dist = std::min(min_dist, d);
  }
  const double qd = q;
  const double bound = (1.0 - entropy(p)) * std::log(qd) / (2.0 * qd * qd * (qd - 1.0));
  return {min_dist, bound, min_dist >= bound - kBoundSlack};
}

Lemma5Result lemma5_check(const Dist& p, const Dist& r, double eta) {
  require_same(p.alphabet(), r.alphabet());
  require_prime(p.alphabet());
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  const double hr = entropy(r);
  const double gain = entropy(cyclic_convolve(p, r)) - hr;
  return {gain, entropy(p) >= eta && hr <= 1.0 - eta};
}

}  // namespace qpolar
