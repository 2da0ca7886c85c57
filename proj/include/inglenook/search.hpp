#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "inglenook/constructive.hpp"
#include "inglenook/model.hpp"
#include "inglenook/pattern.hpp"

namespace inglenook {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct SearchOptions {
  unsigned threads = 1;
  std::uint64_t budget = kDefaultBudget;  // visited states (state pairs for diameters)
};

// Refusal to start a search whose state space exceeds the budget.
class ResourceRefusal : public std::runtime_error {
 public:
  ResourceRefusal(std::uint64_t budget, long double estimated);
  std::uint64_t budget() const { return budget_; }
  long double estimated() const { return estimated_; }

 private:
  std::uint64_t budget_;
  long double estimated_;
};

struct SearchReport {
  std::optional<int> distance;  // empty when no matching position is reachable
  ShuntTrace trace;
  std::uint64_t explored = 0;
  std::uint64_t peak_frontier = 0;
};

// Breadth-first shortest path to the nearest position matching goal. Among
// optimal traces, each step uses the smallest (siding, pull before push, count).
SearchReport optimal_solve(const PuzzleSpec& spec, const Position& start, const GoalPattern& goal,
                           const SearchOptions& opts = {});

struct WorstCase {
  int max_distance = 0;
  Position witness;                  // smallest encoding at the maximum
  std::uint64_t starts = 0;          // matching starts examined
  std::uint64_t unreachable = 0;     // matching starts that cannot reach the goal
  std::uint64_t explored = 0;
};

// Largest optimal distance from a start matching start_pattern to the goal set.
// With over_orbit, the goal is closed under renaming wagons first.
WorstCase worst_case_moves(const PuzzleSpec& spec, const GoalPattern& start_pattern,
                           const GoalPattern& goal, const SearchOptions& opts = {},
                           bool over_orbit = true);

struct Census {
  std::uint64_t states = 0;
  std::vector<std::uint64_t> sizes;  // descending
  std::size_t components() const { return sizes.size(); }
};

Census cards_component_census(const CardsSpec& spec, const SearchOptions& opts = {});
Census inglenook_component_census(const PuzzleSpec& spec, const SearchOptions& opts = {});

class Disconnected : public std::runtime_error {
 public:
  explicit Disconnected(Census census);
  const Census& census() const { return census_; }

 private:
  Census census_;
};

// Size of the component of one position, using bitsets (three bits per
// state) so large spaces fit in memory.
struct Reach {
  std::uint64_t states = 0;
  std::uint64_t reached = 0;
  int eccentricity = 0;
  bool connected() const { return reached == states; }
};
Reach inglenook_reach(const PuzzleSpec& spec, const Position& from, const SearchOptions& opts = {});

// Exact diameters by all-sources breadth-first search. Budget applies to
// (state count)^2.
int cards_diameter(const CardsSpec& spec, const SearchOptions& opts = {});
int inglenook_diameter(const PuzzleSpec& spec, const SearchOptions& opts = {});

std::optional<int> cards_distance(const CardsSpec& spec, const CardsState& from, const CardsState& to,
                                  const SearchOptions& opts = {});

struct ReversalReport {
  PuzzleSpec spec;
  Position from;  // wagons 1..w-1 in the first siding, w in the second
  Position to;    // w..2 in the first siding, 1 in the second
  int distance = 0;
  int cards_distance = 0;
  bool correspondence_holds = false;  // optimal path alternates pull 1 / push 1
  ShuntTrace trace;
};

// Headshunt of one wagon, sidings (w-1, w-1, 1): exact distance between an
// ordered position and its reversal, checked against the cards distance.
ReversalReport reversal_distance(int w, const SearchOptions& opts = {});

// Sum over items of |index in x - index in y|; x and y hold the same labels.
long displacement(const std::vector<Wagon>& x, const std::vector<Wagon>& y);

}  // namespace inglenook
