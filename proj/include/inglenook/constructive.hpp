#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "inglenook/feasibility.hpp"
#include "inglenook/model.hpp"
#include "inglenook/pattern.hpp"

namespace inglenook {

template <class State, class Move>
struct SolutionTrace {
  State start;
  State finish;
  std::vector<Move> moves;

  std::size_t length() const { return moves.size(); }
};

using CardsTrace = SolutionTrace<CardsState, CardMove>;
using ShuntTrace = SolutionTrace<Position, ShuntMove>;

// Refusal to solve a spec whose graph is not connected.
class Infeasible : public std::runtime_error {
 public:
  Infeasible(const std::string& what, FeasibilityVerdict verdict)
      : std::runtime_error(what), verdict_(verdict) {}
  const FeasibilityVerdict& verdict() const { return verdict_; }

 private:
  FeasibilityVerdict verdict_;
};

// Worst-case lengths guaranteed by the construction.
long cards_move_bound(int w);  // w^2 + 6w - 6
long shunt_move_bound(int w);  // 2w^2 + 12w - 10

// Optional instrumentation of solve_cards.
struct CardsAudit {
  std::size_t space_checks = 0;   // free-space inequality checked before clearing above b
  std::size_t seated_checks = 0;  // states verified to keep the seated card in place
  std::size_t levels = 0;         // recursion levels that seated a card
  std::size_t max_level_cost = 0; // longest path x -> z plus the goal-neighbour edge
};

// Constructive path between two card states, built bottom card by bottom card.
// Throws Infeasible when the graph is disconnected; throws std::logic_error if
// an internal invariant or the length bound is violated.
CardsTrace solve_cards(const CardsSpec& spec, const CardsState& start, const CardsState& goal,
                       CardsAudit* audit = nullptr);

// Lifts solve_cards through the convertible-position correspondence.
ShuntTrace solve_inglenook(const PuzzleSpec& spec, const Position& start, const Position& goal,
                           CardsAudit* audit = nullptr);

// Solves to the least matching position (by canonical encoding).
ShuntTrace solve_to_pattern(const PuzzleSpec& spec, const Position& start, const GoalPattern& goal);

// Replays moves, throwing IllegalMove (with the 1-based move index) on the first bad one.
Position replay(const PuzzleSpec& spec, const Position& start, const std::vector<ShuntMove>& moves);
CardsState replay(const CardsSpec& spec, const CardsState& start, const std::vector<CardMove>& moves);

// Card moves -> shunting moves: one move for a card to or from the headshunt
// pile, two (pull then push) between siding piles.
std::vector<ShuntMove> lift_card_move(const PuzzleSpec& spec, const CardMove& mv);

}  // namespace inglenook
