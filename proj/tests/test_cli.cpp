#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpolar/cli.hpp"

using Catch::Matchers::ContainsSubstring;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qpolar");
  std::ostringstream out;
  std::ostringstream err;
  const int code = qpolar::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qpolar_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("capacity command", "[cli]") {
  auto r = run({"capacity", "erasure:q=3,e=0.5"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.500000000000\n");
  r = run({"capacity", "noiseless:q=5"});
  CHECK(r.out == "1.000000000000\n");

  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"q": 2, "labels": ["a", "b"], "rows": [[1, 0], [0.5, 0.4]]})";
  r = run({"capacity", bad.string()});
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("row 1"));

  CHECK(run({"capacity"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("split command", "[cli]") {
  auto r = run({"split", "erasure:q=2,e=0.5"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("I(W-): 0.250000000000\n"));
  CHECK_THAT(r.out, ContainsSubstring("I(W+): 0.750000000000\n"));
  CHECK_THAT(r.out, ContainsSubstring("chain_rule: ok\n"));
  CHECK_THAT(r.out, ContainsSubstring("# qpolar "));

  CHECK(run({"split", "subgroup:q=4,d=2", "--pi", "[0,0,1,2]"}).code == 2);
  r = run({"split", "subgroup:q=4,d=2", "--pi", "[0,2,1,3]"});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("pi: [0,2,1,3]"));

  const auto minus = scratch("minus.json");
  r = run({"split", "erasure:q=3,e=0.5", "--reduce", "--write-minus", minus.string()});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("minus_outputs: 4\n"));
  CHECK(run({"capacity", minus.string()}).out == "0.250000000000\n");
}

TEST_CASE("polarize command", "[cli]") {
  auto r = run({"polarize", "erasure:q=3,e=0.4", "--depth", "16", "--delta", "0.01"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("erasure_fast_path: yes"));
  CHECK_THAT(r.out, ContainsSubstring("fraction_high: 0.56"));

  const auto prefix = scratch("depth0").string();
  r = run({"polarize", "random:q=2,m=3,seed=1", "--depth", "0", "--out", prefix});
  REQUIRE(r.code == 0);
  const std::string table = slurp(prefix + ".csv");
  CHECK(std::count(table.begin(), table.end(), '\n') == 2);

  r = run({"polarize", "random:q=3,m=4,seed=1", "--depth", "7"});
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("output budget exceeded at sign sequence"));

  CHECK(run({"polarize", "erasure:q=2,e=0.5", "--depth", "2", "--delta", "0.7"}).code == 2);
}

TEST_CASE("seeded reports are byte-identical", "[cli]") {
  const auto a = scratch("rep_a").string();
  const std::vector<std::string> base{"polarize", "erasure:q=2,e=0.5", "--depth", "6", "--paths", "50", "--seed", "9",
                                      "--no-fast-path", "--out"};
  auto args_a = base;
  args_a.push_back(a);
  auto args_b = base;
  args_b.push_back(a);
  const auto first = run(args_a);
  const std::string json_a = slurp(a + ".json");
  const std::string paths_a = slurp(a + ".paths.csv");
  run(args_b);
  CHECK(slurp(a + ".json") == json_a);
  CHECK(slurp(a + ".paths.csv") == paths_a);
  CHECK(first.code == 0);
  CHECK_THAT(json_a, ContainsSubstring("\"seed\": 9"));
  const auto l1 = run({"lemmas", "--q", "2,3", "--samples", "200", "--seed", "4"});
  const auto l2 = run({"lemmas", "--q", "2,3", "--samples", "200", "--seed", "4"});
  CHECK(l1.out == l2.out);
}

TEST_CASE("lemmas command", "[cli]") {
  const auto r = run({"lemmas", "--q", "2,3,4,5", "--samples", "500", "--seed", "1", "--channel-pairs", "20"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("total_violations: 0"));
  CHECK_THAT(r.out, ContainsSubstring("shift_separation: skipped"));
  CHECK_THAT(r.out, ContainsSubstring("worst: ["));
  CHECK_THAT(r.out, ContainsSubstring("# seed: 1"));
}

TEST_CASE("composite command", "[cli]") {
  auto r = run({"composite", "--q", "4", "--min-gap", "0.01"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("identity_gap: 0.000000000000"));
  CHECK_THAT(r.out, ContainsSubstring("search: exhaustive"));
  CHECK_THAT(r.out, ContainsSubstring("examined: 24"));
  CHECK_THAT(r.out, ContainsSubstring("[0,2,1,3] gap="));

  r = run({"composite", "--q", "5"});
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("split"));
}

TEST_CASE("gap-curve command", "[cli]") {
  auto r = run({"gap-curve", "--q", "3", "--deltas", "0.1,0.4", "--samples", "500", "--seed", "2"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("delta,kept,empirical_min_gap,witness_capacity\n"));
  CHECK_THAT(r.out, ContainsSubstring("\n0.4,"));
  CHECK(run({"gap-curve", "--q", "4"}).code == 2);
  CHECK(run({"gap-curve", "--q", "3", "--deltas", "0.6"}).code == 2);
}
