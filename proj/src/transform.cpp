#include "qpolar/transform.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qpolar {

Permutation::Permutation(Alphabet alphabet, std::vector<int> map) : alphabet_(alphabet), map_(std::move(map)) {
  const int q = alphabet_.size();
  if (static_cast<int>(map_.size()) != q)
    throw std::invalid_argument("permutation has " + std::to_string(map_.size()) + " entries, expected " +
                                std::to_string(q));
  std::vector<bool> hit(static_cast<std::size_t>(q), false);
  for (int v : map_) {
    if (v < 0 || v >= q) throw std::invalid_argument("permutation entry " + std::to_string(v) + " out of range");
    if (hit[static_cast<std::size_t>(v)])
      throw std::invalid_argument("permutation is not a bijection (" + std::to_string(v) + " repeated)");
    hit[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(Alphabet alphabet) {
  std::vector<int> m(static_cast<std::size_t>(alphabet.size()));
  std::iota(m.begin(), m.end(), 0);
  return Permutation(alphabet, std::move(m));
}

Permutation Permutation::parse(Alphabet alphabet, const std::string& text) {
  std::string cleaned;
  for (char c : text)
    if (c != '[' && c != ']' && !std::isspace(static_cast<unsigned char>(c))) cleaned += c;
  std::vector<int> m;
  std::stringstream ss(cleaned);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("malformed permutation \"" + text + "\"");
    m.push_back(std::stoi(tok));
  }
  return Permutation(alphabet, std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (std::size_t x = 0; x < map_.size(); ++x) inv[static_cast<std::size_t>(map_[x])] = static_cast<int>(x);
  return Permutation(alphabet_, std::move(inv));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < map_.size(); ++x)
    if (map_[x] != static_cast<int>(x)) return false;
  return true;
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(map_[i]);
  }
  return s + "]";
}

SplitPair combine(const Channel& first, const Channel& second) {
  require_same(first.alphabet(), second.alphabet());
  const Alphabet& a = first.alphabet();
  const int q = a.size();
  const Table& w1 = first.table();
  const Table& w2 = second.table();
  const Eigen::Index m1 = w1.cols();
  const Eigen::Index m2 = w2.cols();
  const double inv_q = 1.0 / q;

  Table minus = Table::Zero(q, m1 * m2);
  Table plus(q, m1 * m2 * q);
  for (int u1 = 0; u1 < q; ++u1) {
    for (int u2 = 0; u2 < q; ++u2) {
      const int x1 = a.sub(u1, u2);
      for (Eigen::Index y1 = 0; y1 < m1; ++y1) {
        const double a1 = inv_q * w1(x1, y1);
        for (Eigen::Index y2 = 0; y2 < m2; ++y2) {
          const double v = a1 * w2(u2, y2);
          const Eigen::Index pair = y1 * m2 + y2;
          minus(u1, pair) += v;
          plus(u2, pair * q + u1) = v;
        }
      }
    }
  }

  std::vector<OutputLabel> minus_labels;
  std::vector<OutputLabel> plus_labels;
  minus_labels.reserve(static_cast<std::size_t>(m1 * m2));
  plus_labels.reserve(static_cast<std::size_t>(m1 * m2 * q));
  for (const auto& l1 : first.labels()) {
    for (const auto& l2 : second.labels()) {
      minus_labels.push_back(OutputLabel::pair(l1, l2));
      for (int u1 = 0; u1 < q; ++u1) plus_labels.push_back(OutputLabel::triple(l1, l2, u1));
    }
  }
  return {Channel(a, std::move(minus_labels), std::move(minus), Channel::LabelCheck::trusted),
          Channel(a, std::move(plus_labels), std::move(plus), Channel::LabelCheck::trusted)};
}

SplitPair split(const Channel& w) { return combine(w, w); }

Channel relabel_inputs(const Channel& w, const Permutation& pi) {
  require_same(w.alphabet(), pi.alphabet());
  const Permutation inv = pi.inverse();
  Table t(w.q(), w.outputs());
  for (int v = 0; v < w.q(); ++v) t.row(v) = w.table().row(inv(v));
  return Channel(w.alphabet(), w.labels(), std::move(t), Channel::LabelCheck::trusted);
}

SplitPair split_permuted(const Channel& w, const Permutation& pi) {
  require_same(w.alphabet(), pi.alphabet());
  if (pi.is_identity()) return split(w);
  return combine(w, relabel_inputs(w, pi));
}

Gap gap(const Channel& w, const SplitPair& children) {
  const double i = capacity(w);
  return {i - capacity(children.minus), capacity(children.plus) - i};
}

Gap gap(const Channel& w) { return gap(w, split(w)); }

double entropy_gain_check(const Channel& first, const Channel& second) {
  require_same(first.alphabet(), second.alphabet());
  require_prime(first.alphabet());
  const PosteriorView v1 = posteriors(first);
  const PosteriorView v2 = posteriors(second);
  const double log_q = std::log(static_cast<double>(first.q()));
  double h_sum = 0.0;
  for (const auto& e1 : v1.entries) {
    for (const auto& e2 : v2.entries) {
      const Eigen::VectorXd conv = cyclic_convolve(e1.posterior.mass(), e2.posterior.mass());
      h_sum += e1.weight * e2.weight * clamp_unit(entropy_nats(conv) / log_q, "entropy");
    }
  }
  return h_sum - std::max(v1.conditional_entropy(), v2.conditional_entropy());
}

}  // namespace qpolar
