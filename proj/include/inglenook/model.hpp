#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace inglenook {

// Canonical wagon (or card) label, 1..w.
using Wagon = std::uint8_t;
using Track = std::vector<Wagon>;

inline constexpr int kMaxLabel = 255;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IllegalMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PuzzleSpec {
  int wagons = 0;
  int headshunt = 0;
  std::vector<int> sidings;  // capacities m_1..m_s

  int siding_count() const { return static_cast<int>(sidings.size()); }
  int track_count() const { return siding_count() + 1; }
  // Track 0 is the headshunt, track i >= 1 is siding i.
  int capacity(int track) const { return track == 0 ? headshunt : sidings[track - 1]; }
  int total_capacity() const;

  void validate() const;

  friend bool operator==(const PuzzleSpec&, const PuzzleSpec&) = default;
};

// tracks[0] is the headshunt read engine -> points; tracks[i] is siding i
// read points -> buffer stop.
struct Position {
  std::vector<Track> tracks;

  const Track& headshunt() const { return tracks.front(); }
  const Track& siding(int i) const { return tracks[i]; }

  friend auto operator<=>(const Position&, const Position&) = default;
  friend bool operator==(const Position&, const Position&) = default;
};

enum class Direction : std::uint8_t {
  Pull,  // siding -> headshunt
  Push,  // headshunt -> siding
};

// Ordered by (siding, pull < push, count); the search tie-break relies on it.
struct ShuntMove {
  int siding = 1;
  Direction direction = Direction::Pull;
  int count = 1;

  ShuntMove inverse() const {
    return {siding, direction == Direction::Pull ? Direction::Push : Direction::Pull, count};
  }

  friend auto operator<=>(const ShuntMove&, const ShuntMove&) = default;
  friend bool operator==(const ShuntMove&, const ShuntMove&) = default;
};

// Cards in Piles: piles 0..s with capacities m_0..m_s.
struct CardsSpec {
  int cards = 0;
  std::vector<int> capacities;

  int pile_count() const { return static_cast<int>(capacities.size()); }
  // The "s" of G(w, s, m_0, ..., m_s): one less than the number of piles.
  int s() const { return pile_count() - 1; }
  int total_capacity() const;

  void validate() const;

  friend bool operator==(const CardsSpec&, const CardsSpec&) = default;
};

// Each pile is read bottom -> top.
struct CardsState {
  std::vector<Track> piles;

  friend auto operator<=>(const CardsState&, const CardsState&) = default;
  friend bool operator==(const CardsState&, const CardsState&) = default;
};

struct CardMove {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const CardMove&, const CardMove&) = default;
  friend bool operator==(const CardMove&, const CardMove&) = default;
};

// Throws ValidationError naming the violated invariant.
void validate(const PuzzleSpec& spec, const Position& p);
void validate(const CardsSpec& spec, const CardsState& c);

// All moves to a distinct valid position, sorted by ShuntMove ordering.
std::vector<ShuntMove> legal_moves(const PuzzleSpec& spec, const Position& p);

// Throws IllegalMove when the move is not legal from p.
Position apply_move(const PuzzleSpec& spec, const Position& p, const ShuntMove& mv);

std::vector<CardMove> legal_card_moves(const CardsSpec& spec, const CardsState& c);
CardsState apply_card_move(const CardsSpec& spec, const CardsState& c, const CardMove& mv);

// A position is convertible when the headshunt is not full.
bool is_convertible(const PuzzleSpec& spec, const Position& p);

// Cards in Piles instance whose states biject with the convertible positions:
// piles 0..s with m_0 = h - 1 when h > 1, otherwise piles for sidings 1..s only.
CardsSpec cards_spec_for(const PuzzleSpec& spec);

// Pile index of track `track` under the correspondence, or -1 when the
// headshunt has no pile (h = 1).
int pile_of_track(const PuzzleSpec& spec, int track);
int track_of_pile(const PuzzleSpec& spec, int pile);

CardsState to_cards(const PuzzleSpec& spec, const Position& p);
Position from_cards(const PuzzleSpec& spec, const CardsState& c);

// Fixed-width byte string: one length byte per track, then the wagon labels
// of all tracks concatenated in track order. Lexicographic order on encodings
// is the order used wherever "least position" is needed.
std::string canonical_encoding(const PuzzleSpec& spec, const Position& p);
Position decode_position(const PuzzleSpec& spec, std::string_view bytes);
std::size_t encoding_width(const PuzzleSpec& spec);

}  // namespace inglenook
