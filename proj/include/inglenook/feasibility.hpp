#pragma once

#include <string_view>
#include <vector>

#include "inglenook/model.hpp"

namespace inglenook {

// Which clause of the solvability criterion decided the verdict.
enum class Branch {
  SingleWagon,             // w = 1: always solvable
  SingleSiding,            // w > 1, s = 1 (one siding, or two piles): order is frozen
  ShortHeadshuntTwoSidings,  // w > 1, h = 1, s = 2: order is frozen
  InequalityPass,
  InequalityFail,
};

std::string_view branch_name(Branch b);

struct FeasibilityVerdict {
  bool solvable = false;
  Branch branch = Branch::InequalityFail;
  // (h - 1 + sum m_i) - (w + max{h - 1, m_1..m_s}) for inglenook specs,
  // (sum m_i) - (w + max m_i) for card specs.
  long slack = 0;
  // Inglenook verdicts only hold for natural starting/finishing sets.
  bool natural_only = false;
};

// Exact "can always be solved" decision for natural inglenook puzzles.
FeasibilityVerdict inglenook_solvable(const PuzzleSpec& spec);

// Connectivity of the Cards in Piles graph.
FeasibilityVerdict cards_connected(const CardsSpec& spec);

// Largest w < h + sum m that is solvable; 1 when only the single-wagon clause applies.
int max_wagons(int headshunt, const std::vector<int>& sidings);

// True iff the bottom card of pile j can never move.
bool immovable_bottom(const CardsSpec& spec, int pile);

}  // namespace inglenook
