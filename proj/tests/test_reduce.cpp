#include <catch_amalgamated.hpp>

#include "qpolar/reduce.hpp"
#include "qpolar/transform.hpp"

using namespace qpolar;
using Catch::Matchers::WithinAbs;

TEST_CASE("canonicalize merges proportional columns", "[reduce]") {
  const Channel w = random_channel(3, 3, 5);
  Table t(3, 4);
  t.leftCols(3) = w.table();
  t.col(3) = 0.5 * w.table().col(0);
  t.col(0) *= 0.5;
  const Channel dup(w.alphabet(), numbered_labels(4), t);
  const Channel c = canonicalize(dup);
  CHECK(c.outputs() == 3);
  CHECK_THAT(capacity(c), WithinAbs(capacity(w), 1e-12));
  CHECK(equivalent(c, w));
}

TEST_CASE("canonicalize prunes zero outputs", "[reduce]") {
  const Channel w = make_channel(3, {"a", "b", "c", "z"}, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  const Channel c = canonicalize(w);
  CHECK(c.outputs() == 3);
  CHECK(capacity(c) == 1.0);
}

TEST_CASE("erasure channels are closed under the transform", "[reduce]") {
  for (int q : {2, 3, 5}) {
    for (double e : {0.25, 0.5, 0.75}) {
      const SplitPair s = split(erasure_channel(q, e));
      const Channel m = canonicalize(s.minus);
      const Channel p = canonicalize(s.plus);
      CHECK(m.outputs() == q + 1);
      CHECK(p.outputs() == q + 1);
      CHECK(equivalent(m, erasure_channel(q, 1 - (1 - e) * (1 - e))));
      CHECK(equivalent(p, erasure_channel(q, e * e)));
      CHECK(equivalent(s.minus, erasure_channel(q, 1 - (1 - e) * (1 - e))));
    }
  }
}

TEST_CASE("equivalent", "[reduce]") {
  const Channel w = random_channel(3, 4, 9);
  Table t(3, 4);
  const int order[] = {3, 1, 0, 2};
  for (int y = 0; y < 4; ++y) t.col(y) = w.table().col(order[y]);
  CHECK(equivalent(w, Channel(w.alphabet(), numbered_labels(4), t)));
  CHECK_FALSE(equivalent(noiseless(3), useless(3, 3)));
  CHECK_FALSE(equivalent(noiseless(3), noiseless(5)));
  CHECK(equivalent(split(erasure_channel(3, 0.5)).minus, erasure_channel(3, 0.75)));
  CHECK_FALSE(equivalent(split(erasure_channel(3, 0.5)).minus, erasure_channel(3, 0.7)));
}

TEST_CASE("canonicalize properties", "[reduce][property]") {
  for (int q : {2, 3, 4, 5}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Channel w = random_channel(q, 2 + static_cast<int>(seed % 7), seed + 500);
      for (const Channel& c : {w, split(w).minus, split(w).plus}) {
        const Channel once = canonicalize(c);
        const Channel twice = canonicalize(once);
        REQUIRE(std::abs(capacity(once) - capacity(c)) <= 1e-12);
        REQUIRE(once.outputs() <= c.outputs());
        REQUIRE(twice.table() == once.table());
        REQUIRE(twice.outputs() == once.outputs());
      }
      const SplitPair raw = split(w);
      const SplitPair reduced = split(canonicalize(w));
      REQUIRE_THAT(capacity(reduced.minus), WithinAbs(capacity(raw.minus), 1e-9));
      REQUIRE_THAT(capacity(reduced.plus), WithinAbs(capacity(raw.plus), 1e-9));
    }
  }
}

TEST_CASE("symmetric outputs of W+ merge", "[reduce]") {
  // Binary symmetric channel: W+ has 8 outputs but only 4 distinct posteriors.
  const Channel bsc = make_channel(2, {"0", "1"}, {{0.9, 0.1}, {0.1, 0.9}});
  const SplitPair s = split(bsc);
  CHECK(canonicalize(s.plus).outputs() < s.plus.outputs());
  CHECK_THAT(capacity(canonicalize(s.plus)), WithinAbs(capacity(s.plus), 1e-12));
}
