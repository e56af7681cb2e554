#include <catch_amalgamated.hpp>

#include <algorithm>

#include "oracle.hpp"
#include "qpolar/transform.hpp"

using namespace qpolar;
using Catch::Matchers::WithinAbs;

namespace {

oracle::Rows rows_of(const Channel& w) {
  oracle::Rows r(w.q(), std::vector<double>(w.outputs()));
  for (int x = 0; x < w.q(); ++x)
    for (int y = 0; y < w.outputs(); ++y) r[x][y] = w(y, x);
  return r;
}

}  // namespace

TEST_CASE("permutation parsing and validation", "[transform]") {
  const Alphabet a(4);
  const auto p = Permutation::parse(a, "[0,2,1,3]");
  CHECK(p.str() == "[0,2,1,3]");
  CHECK(Permutation::parse(a, "1,2,3,0").inverse().str() == "[3,0,1,2]");
  CHECK(Permutation::identity(a).is_identity());
  CHECK_THROWS_AS(Permutation::parse(a, "[0,0,1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse(a, "[0,1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse(a, "[0,1,2,4]"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse(a, "[0,x,1,2]"), std::invalid_argument);
}

TEST_CASE("split output layout", "[transform]") {
  const Channel w = erasure_channel(2, 0.5);
  const SplitPair s = split(w);
  REQUIRE(s.minus.outputs() == 9);
  REQUIRE(s.plus.outputs() == 18);
  CHECK(s.minus.labels()[1].str() == "(0,1)");
  CHECK(s.minus.labels()[2].str() == "(0,E)");
  CHECK(s.plus.labels()[0].str() == "(0,0,0)");
  CHECK(s.plus.labels()[1].str() == "(0,0,1)");
  CHECK(s.plus.labels()[17].str() == "(E,E,1)");
  // W-((0,1) | u1=1) = 1/2 W(0|0) W(1|1)
  CHECK_THAT(s.minus(1, 1), WithinAbs(0.5 * 0.25, 1e-15));
  CHECK(s.minus(1, 0) == 0.0);
}

TEST_CASE("split capacities against brute-force enumeration", "[transform]") {
  SECTION("erasure q=3 e=0.5") {
    const SplitPair s = split(erasure_channel(3, 0.5));
    CHECK_THAT(capacity(s.minus), WithinAbs(0.25, 1e-12));
    CHECK_THAT(capacity(s.plus), WithinAbs(0.75, 1e-12));
    const auto [im, ip] = oracle::transformed_capacities(rows_of(erasure_channel(3, 0.5)), oracle::identity(3));
    CHECK_THAT(static_cast<double>(im), WithinAbs(0.25, 1e-12));
    CHECK_THAT(static_cast<double>(ip), WithinAbs(0.75, 1e-12));
  }
  SECTION("fixed points") {
    const SplitPair n = split(noiseless(3));
    CHECK_THAT(capacity(n.minus), WithinAbs(1.0, 1e-15));
    CHECK_THAT(capacity(n.plus), WithinAbs(1.0, 1e-15));
    const SplitPair u = split(useless(3, 2));
    CHECK_THAT(capacity(u.minus), WithinAbs(0.0, 1e-15));
    CHECK_THAT(capacity(u.plus), WithinAbs(0.0, 1e-15));
  }
  SECTION("random channels") {
    for (int q : {2, 3, 4, 5}) {
      for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Channel w = random_channel(q, 2 + static_cast<int>(seed % 4), seed);
        const SplitPair s = split(w);
        const auto [im, ip] = oracle::transformed_capacities(rows_of(w), oracle::identity(q));
        REQUIRE_THAT(capacity(s.minus), WithinAbs(static_cast<double>(im), 1e-12));
        REQUIRE_THAT(capacity(s.plus), WithinAbs(static_cast<double>(ip), 1e-12));
      }
    }
  }
}

TEST_CASE("permuted split against brute-force enumeration", "[transform]") {
  const Channel w = random_channel(4, 3, 77);
  std::vector<int> map{0, 1, 2, 3};
  do {
    const Permutation pi(w.alphabet(), map);
    const SplitPair s = split_permuted(w, pi);
    const auto [im, ip] = oracle::transformed_capacities(rows_of(w), map);
    REQUIRE_THAT(capacity(s.minus), WithinAbs(static_cast<double>(im), 1e-12));
    REQUIRE_THAT(capacity(s.plus), WithinAbs(static_cast<double>(ip), 1e-12));
  } while (std::next_permutation(map.begin(), map.end()));
}

TEST_CASE("identity permutation reproduces split exactly", "[transform]") {
  const Channel w = random_channel(3, 4, 3);
  const SplitPair a = split(w);
  const SplitPair b = split_permuted(w, Permutation::identity(w.alphabet()));
  CHECK(a.minus.table() == b.minus.table());
  CHECK(a.plus.table() == b.plus.table());
  // the generic path through relabel_inputs gives the same tables too
  const SplitPair c = combine(w, relabel_inputs(w, Permutation::identity(w.alphabet())));
  CHECK((a.minus.table() - c.minus.table()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((a.plus.table() - c.plus.table()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_THROWS_AS(split_permuted(w, Permutation::identity(Alphabet(4))), std::invalid_argument);
}

TEST_CASE("subgroup channel is a fixed point of the plain transform", "[transform]") {
  const Channel w = subgroup_channel(4, 2);
  const SplitPair s = split_permuted(w, Permutation::identity(w.alphabet()));
  CHECK_THAT(capacity(s.minus), WithinAbs(0.5, 1e-12));
  const auto [im, ip] = oracle::transformed_capacities(rows_of(w), oracle::identity(4));
  CHECK_THAT(static_cast<double>(im), WithinAbs(0.5, 1e-12));
  CHECK_THAT(static_cast<double>(ip), WithinAbs(0.5, 1e-12));
}

TEST_CASE("chain rule and ordering", "[transform][property]") {
  for (int q : {2, 3, 4, 5, 6}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Channel w = random_channel(q, 2 + static_cast<int>(seed % 7), seed * 31 + q);
      const double i = capacity(w);
      const SplitPair s = split(w);
      const double im = capacity(s.minus);
      const double ip = capacity(s.plus);
      REQUIRE(std::abs(im + ip - 2 * i) <= 1e-9);
      REQUIRE(im <= i + 1e-9);
      REQUIRE(i <= ip + 1e-9);

      const Gap g = gap(w);
      REQUIRE(g.minus_gap >= -1e-9);
      REQUIRE(g.plus_gap >= -1e-9);
      REQUIRE_THAT(g.minus_gap, WithinAbs(g.plus_gap, 1e-9));
    }
  }
}

TEST_CASE("gap examples", "[transform]") {
  CHECK_THAT(gap(erasure_channel(2, 0.5)).minus_gap, WithinAbs(0.5 - 0.25, 1e-12));
  CHECK_THAT(gap(noiseless(3)).minus_gap, WithinAbs(0.0, 1e-12));
  CHECK_THAT(gap(useless(3, 3)).plus_gap, WithinAbs(0.0, 1e-12));
}

TEST_CASE("entropy gain check", "[transform]") {
  SECTION("matches the minus gap") {
    for (int q : {2, 3, 5}) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Channel w = random_channel(q, 2 + static_cast<int>(seed % 7), seed + 1000);
        REQUIRE_THAT(entropy_gain_check(w, w), WithinAbs(gap(w).minus_gap, 1e-9));
      }
    }
  }
  SECTION("noiseless second channel gives no gain") {
    const Channel w = random_channel(3, 4, 8);
    CHECK_THAT(entropy_gain_check(w, noiseless(3)), WithinAbs(0.0, 1e-12));
  }
  SECTION("useless first channel gives no gain") {
    const Channel w = random_channel(3, 4, 8);
    CHECK_THAT(entropy_gain_check(useless(3, 2), w), WithinAbs(0.0, 1e-12));
  }
  SECTION("errors") {
    CHECK_THROWS_AS(entropy_gain_check(noiseless(3), noiseless(5)), std::invalid_argument);
    CHECK_THROWS_AS(entropy_gain_check(noiseless(4), noiseless(4)), std::invalid_argument);
  }
}
