#include "inglenook/state_space.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace inglenook {

namespace {

constexpr std::uint64_t kDenseKeyLimit = 1u << 24;

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void enumerate_compositions(const std::vector<int>& caps, int items, std::size_t track,
                            std::array<std::uint8_t, kMaxIndexedTracks>& cur,
                            std::vector<std::array<std::uint8_t, kMaxIndexedTracks>>& out,
                            const std::vector<int>& room_after) {
  if (track == caps.size()) {
    if (items == 0) out.push_back(cur);
    return;
  }
  const int lo = std::max(0, items - room_after[track]);
  const int hi = std::min(items, caps[track]);
  for (int k = lo; k <= hi; ++k) {
    cur[track] = static_cast<std::uint8_t>(k);
    enumerate_compositions(caps, items - k, track + 1, cur, out, room_after);
  }
  cur[track] = 0;
}

}  // namespace

long double StateSpace::estimate_size(const std::vector<int>& capacities, int items) {
  // ways[n] = number of length vectors over the tracks so far summing to n
  std::vector<long double> ways(static_cast<std::size_t>(items) + 1, 0.0L);
  ways[0] = 1.0L;
  for (int cap : capacities) {
    std::vector<long double> next(ways.size(), 0.0L);
    for (int n = 0; n <= items; ++n) {
      for (int k = 0; k <= cap && n + k <= items; ++k) next[n + k] += ways[n];
    }
    ways = std::move(next);
  }
  long double f = 1.0L;
  for (int i = 2; i <= items; ++i) f *= i;
  return ways[items] * f;
}

StateSpace::StateSpace(std::vector<int> capacities, int items, MoveRule rule)
    : caps_(std::move(capacities)), items_(items), rule_(rule) {
  if (caps_.empty() || static_cast<int>(caps_.size()) > kMaxIndexedTracks) {
    throw std::length_error("state indexing supports 1.." + std::to_string(kMaxIndexedTracks) +
                            " tracks");
  }
  if (items_ < 0 || items_ > kMaxIndexedItems) {
    throw std::length_error("state indexing supports at most " +
                            std::to_string(kMaxIndexedItems) + " wagons");
  }
  perms_ = factorial(items_);
  // Total capacity of the tracks after track i.
  std::vector<int> room_after(caps_.size(), 0);
  for (std::size_t i = caps_.size() - 1; i-- > 0;) room_after[i] = room_after[i + 1] + caps_[i + 1];
  std::array<std::uint8_t, kMaxIndexedTracks> cur{};
  enumerate_compositions(caps_, items_, 0, cur, compositions_, room_after);
  if (compositions_.empty()) throw std::invalid_argument("no state fits the capacities");
  if (perms_ != 0 && compositions_.size() > UINT64_MAX / perms_) {
    throw std::length_error("state count does not fit in 64 bits");
  }
  size_ = compositions_.size() * perms_;

  radix_.assign(caps_.size(), 1);
  std::uint64_t key_space = 1;
  for (std::size_t i = 0; i < caps_.size(); ++i) {
    radix_[i] = key_space;
    if (key_space > kDenseKeyLimit) break;
    key_space *= static_cast<std::uint64_t>(caps_[i] + 1);
  }
  if (key_space <= kDenseKeyLimit) {
    composition_index_.assign(key_space, UINT32_MAX);
    for (std::size_t c = 0; c < compositions_.size(); ++c) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < caps_.size(); ++i) key += compositions_[c][i] * radix_[i];
      composition_index_[key] = static_cast<std::uint32_t>(c);
    }
  }
}

StateSpace StateSpace::for_puzzle(const PuzzleSpec& spec) {
  std::vector<int> caps{spec.headshunt};
  caps.insert(caps.end(), spec.sidings.begin(), spec.sidings.end());
  return StateSpace(std::move(caps), spec.wagons, MoveRule::Shunt);
}

StateSpace StateSpace::for_cards(const CardsSpec& spec) {
  return StateSpace(spec.capacities, spec.cards, MoveRule::Cards);
}

std::uint64_t StateSpace::composition_key(const FlatState& s) const {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < caps_.size(); ++i) key += s.len[i] * radix_[i];
  return key;
}

std::uint64_t StateSpace::rank(const FlatState& s) const {
  std::uint64_t comp = 0;
  if (!composition_index_.empty()) {
    comp = composition_index_[composition_key(s)];
  } else {
    const auto n = caps_.size();
    auto it = std::lower_bound(compositions_.begin(), compositions_.end(), s.len,
                               [n](const auto& a, const auto& b) {
                                 return std::lexicographical_compare(a.begin(), a.begin() + n,
                                                                     b.begin(), b.begin() + n);
                               });
    comp = static_cast<std::uint64_t>(it - compositions_.begin());
  }
  std::uint64_t lehmer = 0;
  std::uint32_t used = 0;
  for (int i = 0; i < items_; ++i) {
    const unsigned v = s.seq[i] - 1u;
    const unsigned smaller_unused = v - static_cast<unsigned>(std::popcount(used & ((1u << v) - 1u)));
    lehmer = lehmer * static_cast<std::uint64_t>(items_ - i) + smaller_unused;
    used |= 1u << v;
  }
  return comp * perms_ + lehmer;
}

FlatState StateSpace::unrank(std::uint64_t r) const {
  FlatState s;
  const std::uint64_t comp = r / perms_;
  std::uint64_t lehmer = r % perms_;
  s.len = compositions_[comp];
  // Decode mixed-radix digits from the least significant end.
  std::array<unsigned, kMaxIndexedItems> digit{};
  for (int i = items_ - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(items_ - i);
    digit[i] = static_cast<unsigned>(lehmer % base);
    lehmer /= base;
  }
  std::uint32_t unused = (1u << items_) - 1u;
  for (int i = 0; i < items_; ++i) {
    std::uint32_t m = unused;
    for (unsigned k = 0; k < digit[i]; ++k) m &= m - 1;
    const int v = std::countr_zero(m);
    s.seq[i] = static_cast<Wagon>(v + 1);
    unused &= ~(1u << v);
  }
  return s;
}

FlatState StateSpace::flatten(const std::vector<Track>& tracks) const {
  FlatState s;
  int at = 0;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    s.len[i] = static_cast<std::uint8_t>(tracks[i].size());
    for (Wagon x : tracks[i]) s.seq[at++] = x;
  }
  return s;
}

std::vector<Track> StateSpace::expand(const FlatState& s) const {
  std::vector<Track> tracks(caps_.size());
  int at = 0;
  for (std::size_t i = 0; i < caps_.size(); ++i) {
    tracks[i].assign(s.seq.begin() + at, s.seq.begin() + at + s.len[i]);
    at += s.len[i];
  }
  return tracks;
}

void StateSpace::neighbors(std::uint64_t r, std::vector<std::uint64_t>& out) const {
  const FlatState s = unrank(r);
  if (rule_ == MoveRule::Shunt) {
    for_each_shunt(s, [&](const ShuntMove&, const FlatState& t) { out.push_back(rank(t)); });
  } else {
    for_each_card(s, [&](const CardMove&, const FlatState& t) { out.push_back(rank(t)); });
  }
}

}  // namespace inglenook
