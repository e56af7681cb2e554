#pragma once

#include "qpolar/channel.hpp"

namespace qpolar {

/// Merges outputs with proportional likelihood columns (equal posteriors),
/// drops zero-probability outputs and sorts the survivors by (posterior,
/// marginal). The merge is information-lossless, so I(W) is unchanged.
/// A merged output keeps the label of its first member.
Channel canonicalize(const Channel& w);

/// True iff both channels induce the same law of (P_Y(y), P_{X|Y}(.|y)),
/// compared componentwise within 1e-9 after canonicalization.
bool equivalent(const Channel& first, const Channel& second);

}  // namespace qpolar
