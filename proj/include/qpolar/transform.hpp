#pragma once

#include <string>
#include <vector>

#include "qpolar/channel.hpp"

namespace qpolar {

/// A bijection on {0, ..., q-1}.
class Permutation {
 public:
  Permutation(Alphabet alphabet, std::vector<int> map);

  static Permutation identity(Alphabet alphabet);
  /// Accepts "[0,2,1,3]" or "0,2,1,3".
  static Permutation parse(Alphabet alphabet, const std::string& text);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int operator()(int x) const { return map_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& map() const noexcept { return map_; }
  Permutation inverse() const;
  bool is_identity() const noexcept;

  /// Array form, e.g. "[0,2,1,3]".
  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  Alphabet alphabet_;
  std::vector<int> map_;
};

struct SplitPair {
  Channel minus;
  Channel plus;
};

/// Combines two uses of (possibly different) channels through U1 = X1 + X2,
/// U2 = X2 over Z_q:
///   minus(y1,y2 | u1)    = 1/q sum_u2 W1(y1 | u1-u2) W2(y2 | u2)
///   plus(y1,y2,u1 | u2)  = 1/q W1(y1 | u1-u2) W2(y2 | u2)
/// Output order is lexicographic in (y1, y2) and (y1, y2, u1) respectively.
SplitPair combine(const Channel& first, const Channel& second);

/// W -> (W-, W+).
SplitPair split(const Channel& w);

/// Permuted variant: U2 = pi(X2), U1 = X1 + U2. This is `combine` applied to
/// W and the relabeled channel y | v -> W(y | pi^{-1}(v)); the identity
/// permutation reproduces `split` exactly.
SplitPair split_permuted(const Channel& w, const Permutation& pi);

/// Channel with inputs relabeled: result(y | v) = W(y | pi^{-1}(v)).
Channel relabel_inputs(const Channel& w, const Permutation& pi);

struct Gap {
  double minus_gap;  ///< I(W) - I(W-)
  double plus_gap;   ///< I(W+) - I(W)
};

Gap gap(const Channel& w);
Gap gap(const Channel& w, const SplitPair& children);

/// E[H(P1 * P2)] - max(E[H(P1)], E[H(P2)]) from the posterior laws of two
/// channels. With W1 = W2 = W this equals I(W) - I(W-), computed without
/// building W-.
double entropy_gain_check(const Channel& first, const Channel& second);

}  // namespace qpolar
