#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpolar/channel.hpp"
#include "qpolar/transform.hpp"

namespace qpolar {

enum class Sign : std::uint8_t { minus = 0, plus = 1 };

/// Element of {-,+}^n; the first sign is applied to the root. The empty
/// sequence denotes the root channel itself.
class SignSequence {
 public:
  SignSequence() = default;
  explicit SignSequence(std::vector<Sign> signs) : signs_(std::move(signs)) {}

  /// Leaf `index` of a depth-`depth` tree, first sign most significant.
  static SignSequence from_index(std::uint64_t index, int depth);
  /// Parses strings like "-+-".
  static SignSequence parse(const std::string& text);

  int size() const noexcept { return static_cast<int>(signs_.size()); }
  bool empty() const noexcept { return signs_.empty(); }
  Sign operator[](int k) const { return signs_[static_cast<std::size_t>(k)]; }
  const std::vector<Sign>& signs() const noexcept { return signs_; }

  std::uint64_t index() const noexcept;
  SignSequence then(Sign s) const;
  std::string str() const;

  friend bool operator==(const SignSequence&, const SignSequence&) = default;

 private:
  std::vector<Sign> signs_;
};

/// Raised when a split would produce more outputs than the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(SignSequence where, long long outputs, long long budget);
  const SignSequence& where() const noexcept { return where_; }
  long long outputs() const noexcept { return outputs_; }

 private:
  SignSequence where_;
  long long outputs_;
};

inline constexpr int kDefaultMaxOutputs = 20000;

/// Produces (child_minus, child_plus) the way every experiment does: split,
/// then canonicalize when `use_reduce`. Throws BudgetExceeded if a raw child
/// would exceed `max_outputs` columns; `where` names the parent node.
SplitPair grow(const Channel& parent, const SignSequence& where, bool use_reduce, long long max_outputs);

/// Erasure probability if `w` is equivalent to a q-ary erasure channel.
std::optional<double> erasure_parameter(const Channel& w);

/// Closed-form erasure recursion: e- = 1 - (1-e)^2, e+ = e^2.
double erasure_step(double e, Sign s) noexcept;

struct TreeOptions {
  int depth = 0;
  bool use_reduce = true;
  long long max_outputs = kDefaultMaxOutputs;
  /// Advance erasure-equivalent roots through the scalar recursion.
  bool erasure_fast_path = true;
  double delta = 0.01;
  int threads = 1;
};

struct PolarizationReport {
  int depth = 0;
  double delta = 0.01;
  double root_capacity = 0.0;
  bool erasure_fast_path = false;
  /// levels[k][i] = I(W^s) for s = SignSequence::from_index(i, k).
  std::vector<std::vector<double>> levels;
  double fraction_high = 0.0;
  double fraction_low = 0.0;
  double mean_capacity = 0.0;
  /// mean over depth-k nodes of |I(child) - I(node)|, k = 0..depth-1.
  std::vector<double> mean_abs_increment;

  const std::vector<double>& leaves() const { return levels.back(); }
  double leaf(const SignSequence& s) const;
  /// Average capacity at depth k.
  double level_mean(int k) const;
};

/// Builds all 2^depth channels W^s (or their capacities, on the erasure fast
/// path) and summarizes polarization at `options.delta`.
PolarizationReport build_tree(const Channel& root, const TreeOptions& options);

struct Fractions {
  double high;  ///< share with I > 1 - delta
  double low;   ///< share with I < delta
};

Fractions polarization_fractions(const std::vector<double>& capacities, double delta);
Fractions polarization_fractions(const PolarizationReport& report, double delta);
/// Fractions at an intermediate depth of the report.
Fractions polarization_fractions(const PolarizationReport& report, int depth, double delta);

struct PathTrace {
  std::uint64_t seed = 0;
  SignSequence signs;
  std::vector<double> capacities;  ///< I_0 ... I_n
};

struct PathOptions {
  int depth = 0;
  int paths = 1;
  std::uint64_t seed = 0;
  bool use_reduce = true;
  long long max_outputs = kDefaultMaxOutputs;
  int threads = 1;
};

struct PathSummary {
  std::vector<double> mean;            ///< empirical E[I_k], k = 0..n
  std::vector<double> standard_error;  ///< of the mean, k = 0..n
  std::vector<double> mean_abs_increment;  ///< empirical E|I_{k+1} - I_k|, k = 0..n-1
};

struct PathSample {
  std::vector<PathTrace> traces;
  PathSummary summary;
};

/// Random walks down the polarization tree with fair, independent signs.
/// Path i draws its signs from a generator seeded with mix_seed(seed, i).
PathSample sample_paths(const Channel& root, const PathOptions& options);

struct EpsilonPoint {
  double delta;
  std::size_t kept;          ///< sampled channels with I(W) in (delta, 1 - delta)
  double empirical_min_gap;  ///< NaN when kept == 0
  double witness_capacity;   ///< I(W) of the minimizing channel, NaN when kept == 0
};

/// Empirical min of I(W) - I(W-) over random channels (m uniform in 2..8)
/// falling in each delta band. Requires prime q.
std::vector<EpsilonPoint> epsilon_curve(int q, const std::vector<double>& delta_grid, std::size_t samples,
                                        std::uint64_t seed);

struct PermutationGap {
  Permutation pi;
  double gap;  ///< I(W) - I(W-_pi)
};

struct CompositeOptions {
  /// Force exhaustive enumeration; otherwise exhaustive only for q <= 6.
  bool exhaustive = false;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

struct CompositeResult {
  double fixed_point_demo = 0.0;  ///< gap under the identity permutation
  bool exhaustive = false;
  std::size_t examined = 0;
  std::vector<PermutationGap> good_permutations;
};

/// Searches permutations pi of a composite alphabet for which the permuted
/// transform achieves I(W) - I(W-_pi) >= min_gap.
CompositeResult composite_search(int q, const Channel& w, double min_gap, const CompositeOptions& options = {});

}  // namespace qpolar
