#include <set>

#include "doctest.h"
#include "inglenook/state_space.hpp"
#include "oracle.hpp"

using namespace inglenook;

TEST_CASE("rank is a bijection in encoding order") {
  for (const PuzzleSpec& spec : {PuzzleSpec{4, 2, {2, 2, 1}}, PuzzleSpec{3, 3, {1, 2}}, PuzzleSpec{5, 3, {3, 2}}}) {
    const StateSpace sp = StateSpace::for_puzzle(spec);
    const auto all = oracle::all_positions(spec);
    REQUIRE(sp.size() == all.size());
    std::vector<std::pair<std::string, std::uint64_t>> by_encoding;
    for (const Position& p : all) {
      const auto r = sp.rank(sp.flatten(p.tracks));
      REQUIRE(r < sp.size());
      CHECK(Position{sp.expand(sp.unrank(r))} == p);
      by_encoding.emplace_back(canonical_encoding(spec, p), r);
    }
    std::sort(by_encoding.begin(), by_encoding.end());
    for (std::size_t i = 0; i < by_encoding.size(); ++i) CHECK(by_encoding[i].second == i);
  }
}

TEST_CASE("estimated size equals the exact count") {
  CHECK(StateSpace::estimate_size({3, 3, 3, 5}, 8) == doctest::Approx(2136960.0));
  CHECK(StateSpace::for_puzzle({8, 3, {3, 3, 5}}).size() == 2136960u);
  CHECK(StateSpace::estimate_size({2, 2, 2}, 3) ==
        doctest::Approx(static_cast<double>(oracle::all_layouts({2, 2, 2}, 3).size())));
}

TEST_CASE("shunt neighbours match the definition") {
  const PuzzleSpec spec{4, 3, {2, 1, 3}};
  const StateSpace sp = StateSpace::for_puzzle(spec);
  for (const Position& p : oracle::all_positions(spec)) {
    std::set<Position> mine, theirs;
    std::vector<ShuntMove> moves;
    sp.for_each_shunt(sp.flatten(p.tracks), [&](const ShuntMove& m, const FlatState& t) {
      mine.insert(Position{sp.expand(t)});
      moves.push_back(m);
    });
    for (const auto& q : oracle::shunt_neighbours(spec, p)) theirs.insert(q);
    CHECK(mine == theirs);
    CHECK(moves == legal_moves(spec, p));
    for (const ShuntMove& m : moves) CHECK(mine.count(apply_move(spec, p, m)) == 1);
  }
}

TEST_CASE("card neighbours match single-card moves") {
  const CardsSpec spec{4, {2, 1, 3}};
  const StateSpace sp = StateSpace::for_cards(spec);
  for (const CardsState& c : oracle::all_card_states(spec)) {
    std::vector<CardMove> moves;
    sp.for_each_card(sp.flatten(c.piles), [&](const CardMove& m, const FlatState& t) {
      moves.push_back(m);
      CHECK(CardsState{sp.expand(t)} == apply_card_move(spec, c, m));
    });
    CHECK(moves == legal_card_moves(spec, c));
  }
}

TEST_CASE("limits") {
  CHECK_THROWS_AS(StateSpace({30, 30}, 21, MoveRule::Shunt), std::length_error);
  CHECK_THROWS_AS(StateSpace(std::vector<int>(17, 1), 3, MoveRule::Cards), std::length_error);
}
