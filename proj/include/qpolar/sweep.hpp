#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpolar {

/// Outcome of checking one inequality over a sample.
struct BoundStats {
  std::string name;
  bool skipped = false;
  std::string note;
  std::size_t checked = 0;
  std::size_t violations = 0;
  /// Smallest observed slack (lhs - rhs, or the gain itself).
  double worst_slack = 0.0;
  /// Distribution(s) attaining worst_slack, in full.
  std::vector<std::vector<double>> witness;
};

struct LemmaSweep {
  int q = 0;
  std::vector<BoundStats> bounds;
};

struct SweepOptions {
  std::size_t samples = 10000;
  std::size_t channel_pairs = 200;
  double eta = 0.1;
  std::uint64_t seed = 0;
};

/// Runs the L1-to-uniform bound, the shift-separation bound (prime q only),
/// the weak and strict convolution-gain checks (prime q only) and the
/// conditional-entropy gain of the mod-q sum over random channel pairs
/// (prime q only). Samples are corner cases plus uniform simplex draws.
LemmaSweep lemma_sweep(int q, const SweepOptions& options);

}  // namespace qpolar
