#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inglenook/model.hpp"
#include "inglenook/text_format.hpp"

namespace inglenook {

struct TrackConstraint {
  enum class Kind : std::uint8_t {
    Any,       // H = *
    Empty,     // S1 = []
    Exact,     // S3 = [4,5,6,7,8]
    AnyOrder,  // S2 ~ {1,2,3}
  };

  Kind kind = Kind::Any;
  std::vector<Wagon> wagons;

  bool matches(const Track& t) const;
  // Same track length, labels ignored.
  bool shape_matches(const Track& t) const;

  friend bool operator==(const TrackConstraint&, const TrackConstraint&) = default;
};

// One constraint per track (index 0 = headshunt).
struct PatternAlternative {
  std::vector<TrackConstraint> tracks;

  bool matches(const Position& p) const;
  bool shape_matches(const Position& p) const;
};

class UnsatisfiablePattern : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A finishing (or starting) set: positions matching any alternative.
class GoalPattern {
 public:
  GoalPattern() = default;
  explicit GoalPattern(std::vector<PatternAlternative> alternatives);

  static GoalPattern exact(const Position& p);
  static GoalPattern any(const PuzzleSpec& spec);

  const std::vector<PatternAlternative>& alternatives() const { return alternatives_; }

  bool matches(const Position& p) const;
  // Matches some relabelling of the wagons: the union of the pattern's orbit.
  bool shape_matches(const Position& p) const;
  // True when no alternative mentions a wagon label.
  bool label_free() const;

  // Throws UnsatisfiablePattern listing every conflict when no alternative is
  // consistent with the spec.
  void check_satisfiable(const PuzzleSpec& spec) const;
  // Least matching position by canonical encoding.
  Position least_match(const PuzzleSpec& spec) const;
  // Uniform over all matching positions.
  Position sample(const PuzzleSpec& spec, std::mt19937_64& rng) const;

 private:
  std::vector<PatternAlternative> alternatives_;
};

// One alternative per line (or separated by "||"); clauses separated by ';':
//   S3 = [4,5,6,7,8]; S2 ~ {1,2,3}; S1 = []; H = *
// A line in position format is read as an exact alternative.
GoalPattern parse_pattern(const PuzzleSpec& spec, std::string_view text, const LabelTable& labels);
std::string format_pattern(const GoalPattern& g, const LabelTable& labels);

// Portable uniform integer in [0, n) from a 64-bit engine (rejection sampling).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

}  // namespace inglenook
