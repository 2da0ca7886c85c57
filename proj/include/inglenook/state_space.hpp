#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "inglenook/model.hpp"

namespace inglenook {

inline constexpr int kMaxIndexedItems = 20;  // 20! < 2^64
inline constexpr int kMaxIndexedTracks = 16;

// All tracks concatenated in track order, plus per-track lengths.
struct FlatState {
  std::array<std::uint8_t, kMaxIndexedTracks> len{};
  std::array<Wagon, kMaxIndexedItems> seq{};
};

enum class MoveRule {
  Shunt,  // block transfers between track 0 and any other track
  Cards,  // single top card between any two piles
};

// Dense ranking of every state of a track system: rank = composition index *
// w! + Lehmer rank of the concatenated labels. Compositions are enumerated in
// lexicographic order, so rank order equals canonical encoding order.
class StateSpace {
 public:
  StateSpace(std::vector<int> capacities, int items, MoveRule rule);

  static StateSpace for_puzzle(const PuzzleSpec& spec);
  static StateSpace for_cards(const CardsSpec& spec);

  // State count as a floating estimate; usable when the exact count overflows.
  static long double estimate_size(const std::vector<int>& capacities, int items);

  std::uint64_t size() const { return size_; }
  int items() const { return items_; }
  int tracks() const { return static_cast<int>(caps_.size()); }
  const std::vector<int>& capacities() const { return caps_; }
  MoveRule rule() const { return rule_; }

  std::uint64_t rank(const FlatState& s) const;
  FlatState unrank(std::uint64_t r) const;

  FlatState flatten(const std::vector<Track>& tracks) const;
  std::vector<Track> expand(const FlatState& s) const;

  // Neighbour states in move order (ShuntMove order for Shunt, (from, to) for Cards).
  void neighbors(std::uint64_t r, std::vector<std::uint64_t>& out) const;

  template <class F>
  void for_each_shunt(const FlatState& s, F&& f) const;
  template <class F>
  void for_each_card(const FlatState& s, F&& f) const;

 private:
  std::uint64_t composition_key(const FlatState& s) const;

  std::vector<int> caps_;
  int items_;
  MoveRule rule_;
  std::uint64_t perms_ = 1;
  std::uint64_t size_ = 0;
  std::vector<std::array<std::uint8_t, kMaxIndexedTracks>> compositions_;
  std::vector<std::uint32_t> composition_index_;  // by mixed-radix key
  std::vector<std::uint64_t> radix_;
};

// Calls f(ShuntMove, FlatState) for each legal shunting move in ShuntMove order.
template <class F>
void StateSpace::for_each_shunt(const FlatState& s, F&& f) const {
  const int head = s.len[0];
  int offset = head;
  for (int r = 1; r < tracks(); ++r) {
    const int here = s.len[r];
    const int max_pull = std::min(caps_[0] - head, here);
    for (int k = 1; k <= max_pull; ++k) {
      FlatState t = s;
      // First k wagons of the siding go to the points end of the headshunt.
      std::rotate(t.seq.begin() + head, t.seq.begin() + offset, t.seq.begin() + offset + k);
      t.len[0] = static_cast<std::uint8_t>(head + k);
      t.len[r] = static_cast<std::uint8_t>(here - k);
      f(ShuntMove{r, Direction::Pull, k}, t);
    }
    const int max_push = std::min(head, caps_[r] - here);
    for (int k = 1; k <= max_push; ++k) {
      FlatState t = s;
      std::rotate(t.seq.begin() + head - k, t.seq.begin() + head, t.seq.begin() + offset);
      t.len[0] = static_cast<std::uint8_t>(head - k);
      t.len[r] = static_cast<std::uint8_t>(here + k);
      f(ShuntMove{r, Direction::Push, k}, t);
    }
    offset += here;
  }
}

// Calls f(CardMove, FlatState) for each legal card move in (from, to) order.
template <class F>
void StateSpace::for_each_card(const FlatState& s, F&& f) const {
  std::array<int, kMaxIndexedTracks> end{};
  int acc = 0;
  for (int i = 0; i < tracks(); ++i) {
    acc += s.len[i];
    end[i] = acc;
  }
  for (int i = 0; i < tracks(); ++i) {
    if (s.len[i] == 0) continue;
    for (int j = 0; j < tracks(); ++j) {
      if (j == i || s.len[j] >= caps_[j]) continue;
      FlatState t = s;
      if (i < j) {
        std::rotate(t.seq.begin() + end[i] - 1, t.seq.begin() + end[i], t.seq.begin() + end[j]);
      } else {
        std::rotate(t.seq.begin() + end[j], t.seq.begin() + end[i] - 1, t.seq.begin() + end[i]);
      }
      --t.len[i];
      ++t.len[j];
      f(CardMove{i, j}, t);
    }
  }
}

}  // namespace inglenook
