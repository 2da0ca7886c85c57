#include <optional>
#include <map>

#include "doctest.h"
#include "inglenook/pattern.hpp"
#include "oracle.hpp"

using namespace inglenook;

namespace {

const PuzzleSpec kClassic{8, 3, {3, 3, 5}};

GoalPattern pat(const PuzzleSpec& spec, const std::string& text) {
  return parse_pattern(spec, text, LabelTable::canonical(spec.wagons));
}

Position pos(const PuzzleSpec& spec, const std::string& text) {
  LabelTable labels = LabelTable::canonical(spec.wagons);
  return parse_position(spec, text, labels);
}

}  // namespace

TEST_CASE("matching the classic goal family") {
  const GoalPattern g = pat(kClassic, "S3 = [4,5,6,7,8]; S2 ~ {1,2,3}; H = []\nS3 = [4,5,6,7,8]; S1 ~ {1,2,3}; H = []");
  CHECK(g.alternatives().size() == 2);
  CHECK(g.matches(pos(kClassic, "H:[]|S1:[]|S2:[1,3,2]|S3:[4,5,6,7,8]")));
  CHECK(g.matches(pos(kClassic, "H:[]|S1:[3,2,1]|S2:[]|S3:[4,5,6,7,8]")));
  CHECK_FALSE(g.matches(pos(kClassic, "H:[]|S1:[3]|S2:[2,1]|S3:[4,5,6,7,8]")));
  CHECK_FALSE(g.matches(pos(kClassic, "H:[]|S1:[]|S2:[1,3,2]|S3:[4,5,6,8,7]")));
  CHECK_FALSE(g.label_free());
  // the same family written with the inline separator
  const GoalPattern inline_g =
      pat(kClassic, "S3 = [4,5,6,7,8]; S2 ~ {1,2,3}; H = [] || S3 = [4,5,6,7,8]; S1 ~ {1,2,3}; H = []");
  CHECK(inline_g.alternatives().size() == 2);
}

TEST_CASE("unlisted tracks are unconstrained; position lines are exact") {
  const GoalPattern g = pat(kClassic, "H = []; S1 = []");
  CHECK(g.label_free());
  CHECK(g.matches(pos(kClassic, "H:[]|S1:[]|S2:[4,7,8]|S3:[1,6,2,3,5]")));
  CHECK_FALSE(g.matches(pos(kClassic, "H:[1]|S1:[]|S2:[4,7,8]|S3:[6,2,3,5]")));
  const GoalPattern exact = pat(kClassic, "H:[]|S1:[]|S2:[1,2,3]|S3:[4,5,6,7,8]");
  CHECK(exact.matches(pos(kClassic, "H:[]|S1:[]|S2:[1,2,3]|S3:[4,5,6,7,8]")));
  CHECK_FALSE(exact.matches(pos(kClassic, "H:[]|S1:[]|S2:[2,1,3]|S3:[4,5,6,7,8]")));
  CHECK(pat(kClassic, "H = *").matches(pos(kClassic, "H:[1]|S1:[]|S2:[4,7,8]|S3:[6,2,3,5]")));
}

TEST_CASE("shape matching ignores labels") {
  const GoalPattern g = pat(kClassic, "H = []; S1 = []; S2 ~ {1,2,3}; S3 = [4,5,6,7,8]");
  CHECK(g.shape_matches(pos(kClassic, "H:[]|S1:[]|S2:[8,7,6]|S3:[1,2,3,4,5]")));
  CHECK_FALSE(g.shape_matches(pos(kClassic, "H:[]|S1:[8]|S2:[7,6]|S3:[1,2,3,4,5]")));
}

TEST_CASE("pattern syntax errors") {
  for (const char* bad : {"S9 = []", "S1 = [1", "S1 ~ [1]", "S1 = [9]", "S1 = [1]; S1 = []", "S1 == []",
                          "X1 = []", "S1 = [1,1]", ""}) {
    CHECK_THROWS_AS_MESSAGE(pat(kClassic, bad), ParseError, std::string(bad));
  }
}

TEST_CASE("unsatisfiable patterns list every conflict") {
  CHECK_THROWS_WITH_AS(pat(kClassic, "S1 ~ {1,2,3,4}").check_satisfiable(kClassic),
                       doctest::Contains("S1"), UnsatisfiablePattern);
  // both alternatives broken, both reported
  try {
    pat(kClassic, "S1 ~ {1,2,3,4}\nS2 = [1]; S3 = [1]").check_satisfiable(kClassic);
    FAIL("expected UnsatisfiablePattern");
  } catch (const UnsatisfiablePattern& e) {
    const std::string what = e.what();
    CHECK(what.find("alternative 1") != std::string::npos);
    CHECK(what.find("alternative 2") != std::string::npos);
  }
  // eight wagons cannot fit when every track is empty but one
  CHECK_THROWS_AS(pat(kClassic, "H = []; S1 = []; S2 = []").check_satisfiable(kClassic), UnsatisfiablePattern);
  CHECK_NOTHROW(pat(kClassic, "S1 ~ {1,2,3,4}\nH = []").check_satisfiable(kClassic));
}

TEST_CASE("least match is the smallest encoding among matches") {
  for (const PuzzleSpec& spec : {PuzzleSpec{4, 2, {2, 2, 1}}, PuzzleSpec{4, 3, {2, 2}}}) {
    for (const char* text : {"H = *", "S1 ~ {1,3}", "S2 = [2]; H = []", "S1 = [] || S2 ~ {4}", "H = [4,1]"}) {
      GoalPattern g = [&] {
        try {
          return pat(spec, text);
        } catch (const ParseError&) {
          return GoalPattern::any(spec);
        }
      }();
      std::optional<std::string> best;
      for (const Position& p : oracle::all_positions(spec)) {
        if (!g.matches(p)) continue;
        const std::string e = canonical_encoding(spec, p);
        if (!best || e < *best) best = e;
      }
      if (!best) {
        CHECK_THROWS_AS(g.least_match(spec), UnsatisfiablePattern);
        continue;
      }
      CHECK(canonical_encoding(spec, g.least_match(spec)) == *best);
    }
  }
}

TEST_CASE("sampling is uniform over the union of alternatives") {
  const PuzzleSpec spec{3, 2, {2, 2}};
  const GoalPattern g = pat(spec, "S1 ~ {1,2}\nH = []");
  std::map<Position, int> counts;
  int matching = 0;
  for (const Position& p : oracle::all_positions(spec)) {
    if (g.matches(p)) {
      counts[p] = 0;
      ++matching;
    }
  }
  REQUIRE(matching > 3);
  std::mt19937_64 rng(2024);
  const int draws = 400 * matching;
  for (int i = 0; i < draws; ++i) {
    const Position p = g.sample(spec, rng);
    REQUIRE(counts.count(p) == 1);
    ++counts[p];
  }
  // 400 expected per position; 5 standard deviations is about 100
  for (const auto& [p, n] : counts) CHECK(std::abs(n - 400) < 100);
}

TEST_CASE("sampling is reproducible") {
  const GoalPattern g = pat(kClassic, "H = []; S1 = []");
  std::mt19937_64 a(5), b(5), c(6);
  const Position pa = g.sample(kClassic, a);
  CHECK(pa == g.sample(kClassic, b));
  CHECK(g.matches(pa));
  int same = 0;
  std::mt19937_64 x(11), y(12);
  for (int i = 0; i < 100; ++i) same += g.sample(kClassic, x) == g.sample(kClassic, y);
  CHECK(same < 5);
  (void)c;
}

TEST_CASE("single wagon placements are all reachable by sampling") {
  const PuzzleSpec spec{1, 2, {1, 2}};
  std::mt19937_64 rng(3);
  std::map<Position, int> seen;
  for (int i = 0; i < 600; ++i) ++seen[GoalPattern::any(spec).sample(spec, rng)];
  CHECK(seen.size() == 3);
  for (const auto& [p, n] : seen) CHECK(n > 120);
}

TEST_CASE("uniform_below stays in range") {
  std::mt19937_64 rng(1);
  for (std::uint64_t n : {1ull, 2ull, 3ull, 1000ull, (1ull << 63) + 5}) {
    for (int i = 0; i < 100; ++i) CHECK(uniform_below(rng, n) < n);
  }
  CHECK_THROWS(uniform_below(rng, 0));
}

TEST_CASE("format_pattern round trips") {
  const GoalPattern g = pat(kClassic, "S3 = [4,5,6,7,8]; S2 ~ {1,2,3}; H = []\nS1 = []");
  const LabelTable labels = LabelTable::canonical(8);
  const GoalPattern again = parse_pattern(kClassic, format_pattern(g, labels), labels);
  for (const Position& p : {pos(kClassic, "H:[]|S1:[]|S2:[1,3,2]|S3:[4,5,6,7,8]"),
                            pos(kClassic, "H:[]|S1:[]|S2:[4,7,8]|S3:[1,6,2,3,5]"),
                            pos(kClassic, "H:[1]|S1:[6]|S2:[4,7,8]|S3:[2,3,5]")}) {
    CHECK(g.matches(p) == again.matches(p));
  }
}
