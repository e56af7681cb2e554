#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "qpolar/alphabet.hpp"
#include "qpolar/dist.hpp"
#include "qpolar/label.hpp"

namespace qpolar {

/// Row-stochastic transition table, table(x, y) = W(y | x).
using Table = Eigen::MatrixXd;

/// A q-ary-input discrete memoryless channel with a finite, labelled output
/// alphabet. Immutable after construction.
class Channel {
 public:
  enum class LabelCheck { verify, trusted };

  /// Validates the table: q rows, one column per label, entries >= 0, rows
  /// summing to 1 (within 1e-12 kept, within 1e-9 renormalized, else rejected
  /// with the offending row named). `trusted` skips the label uniqueness scan
  /// for labels that are distinct by construction.
  Channel(Alphabet alphabet, std::vector<OutputLabel> labels, Table table,
          LabelCheck check = LabelCheck::verify);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int q() const noexcept { return alphabet_.size(); }
  int outputs() const noexcept { return static_cast<int>(table_.cols()); }
  const std::vector<OutputLabel>& labels() const noexcept { return labels_; }
  const Table& table() const noexcept { return table_; }

  /// W(y | x)
  double operator()(int y, int x) const { return table_(x, y); }

 private:
  Alphabet alphabet_;
  std::vector<OutputLabel> labels_;
  Table table_;
};

Channel make_channel(int q, const std::vector<std::string>& labels, const std::vector<std::vector<double>>& rows);

/// Symmetric capacity I(W) in base-q units: mutual information under a
/// uniform input.
double capacity(const Channel& w);

/// One posterior P_{X|Y}(. | y) together with the output probability P_Y(y).
struct PosteriorEntry {
  double weight;
  Dist posterior;
};

/// The channel seen as the law of the random posterior P_{X|Y}(. | Y) under a
/// uniform input. Outputs with zero probability are omitted.
struct PosteriorView {
  Alphabet alphabet;
  std::vector<PosteriorEntry> entries;

  /// H(X | Y) = E[H(P)].
  double conditional_entropy() const;
};

PosteriorView posteriors(const Channel& w);

/// Rebuilds a channel with one output per posterior entry,
/// W(y | x) = q * weight(y) * posterior(y)(x).
Channel channel_from_posteriors(const PosteriorView& view);

/// q-ary erasure channel: outputs 0..q-1 and "E".
Channel erasure_channel(int q, double erasure_probability);
Channel noiseless(int q);
/// All rows uniform over m outputs.
Channel useless(int q, int m);
/// Reveals x mod d. d must be a proper nontrivial divisor of q.
Channel subgroup_channel(int q, int d);
/// Rows independently uniform on the m-simplex.
Channel random_channel(int q, int m, std::uint64_t seed);

}  // namespace qpolar
