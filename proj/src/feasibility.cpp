#include "inglenook/feasibility.hpp"

#include <algorithm>
#include <numeric>

namespace inglenook {

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::SingleWagon: return "w=1";
    case Branch::SingleSiding: return "s=1";
    case Branch::ShortHeadshuntTwoSidings: return "h=1,s=2";
    case Branch::InequalityPass: return "inequality-pass";
    case Branch::InequalityFail: return "inequality-fail";
  }
  return "?";
}

FeasibilityVerdict inglenook_solvable(const PuzzleSpec& spec) {
  spec.validate();
  FeasibilityVerdict v;
  v.natural_only = true;
  const long sum = std::accumulate(spec.sidings.begin(), spec.sidings.end(), 0L);
  const long biggest = std::max<long>(spec.headshunt - 1,
                                      *std::max_element(spec.sidings.begin(), spec.sidings.end()));
  v.slack = (spec.headshunt - 1 + sum) - (spec.wagons + biggest);
  if (spec.wagons == 1) {
    v.solvable = true;
    v.branch = Branch::SingleWagon;
  } else if (spec.siding_count() == 1) {
    v.branch = Branch::SingleSiding;
  } else if (spec.headshunt == 1 && spec.siding_count() == 2) {
    v.branch = Branch::ShortHeadshuntTwoSidings;
  } else {
    v.solvable = v.slack >= 0;
    v.branch = v.solvable ? Branch::InequalityPass : Branch::InequalityFail;
  }
  return v;
}

FeasibilityVerdict cards_connected(const CardsSpec& spec) {
  spec.validate();
  FeasibilityVerdict v;
  const long sum = spec.total_capacity();
  const long biggest = *std::max_element(spec.capacities.begin(), spec.capacities.end());
  v.slack = sum - (spec.cards + biggest);
  if (spec.cards == 1) {
    v.solvable = true;
    v.branch = Branch::SingleWagon;
  } else if (spec.s() <= 1) {
    v.branch = Branch::SingleSiding;
  } else {
    v.solvable = v.slack >= 0;
    v.branch = v.solvable ? Branch::InequalityPass : Branch::InequalityFail;
  }
  return v;
}

int max_wagons(int headshunt, const std::vector<int>& sidings) {
  PuzzleSpec probe{1, headshunt, sidings};
  probe.validate();
  const int s = probe.siding_count();
  if (s == 1 || (headshunt == 1 && s == 2)) return 1;
  const int sum = std::accumulate(sidings.begin(), sidings.end(), 0);
  const int biggest = std::max(headshunt - 1, *std::max_element(sidings.begin(), sidings.end()));
  const int by_inequality = headshunt - 1 + sum - biggest;
  const int by_capacity = headshunt + sum - 1;
  return std::max(1, std::min(by_inequality, by_capacity));
}

bool immovable_bottom(const CardsSpec& spec, int pile) {
  spec.validate();
  if (pile < 0 || pile >= spec.pile_count()) throw ValidationError("no pile " + std::to_string(pile));
  return spec.total_capacity() - spec.capacities[pile] <= spec.cards - 1;
}

}  // namespace inglenook
