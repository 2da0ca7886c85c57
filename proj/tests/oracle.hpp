#pragma once

// Slow reference implementations used only by tests. They share no code with
// the library beyond the plain data types.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "inglenook/model.hpp"

namespace oracle {

using inglenook::CardsSpec;
using inglenook::CardsState;
using inglenook::Position;
using inglenook::PuzzleSpec;
using inglenook::Track;
using inglenook::Wagon;

inline std::vector<int> caps_of(const PuzzleSpec& s) {
  std::vector<int> c{s.headshunt};
  c.insert(c.end(), s.sidings.begin(), s.sidings.end());
  return c;
}

// Every way to place `items` labelled objects on tracks with the given capacities.
inline std::vector<std::vector<Track>> all_layouts(const std::vector<int>& caps, int items) {
  std::vector<std::vector<int>> lengths;
  std::vector<int> cur(caps.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == caps.size()) {
      if (left == 0) lengths.push_back(cur);
      return;
    }
    for (int k = 0; k <= std::min(left, caps[i]); ++k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, items);
  std::vector<Wagon> perm(items);
  std::iota(perm.begin(), perm.end(), Wagon{1});
  std::vector<std::vector<Track>> out;
  do {
    for (const auto& len : lengths) {
      std::vector<Track> t(caps.size());
      int at = 0;
      for (std::size_t i = 0; i < caps.size(); ++i) {
        t[i].assign(perm.begin() + at, perm.begin() + at + len[i]);
        at += len[i];
      }
      out.push_back(std::move(t));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Neighbours straight from the definition: W0 + Wr is preserved and every
// other track is unchanged; any split within capacity gives a position.
inline std::vector<Position> shunt_neighbours(const PuzzleSpec& s, const Position& p) {
  std::vector<Position> out;
  for (int r = 1; r <= static_cast<int>(s.sidings.size()); ++r) {
    Track joined = p.tracks[0];
    joined.insert(joined.end(), p.tracks[r].begin(), p.tracks[r].end());
    for (std::size_t cut = 0; cut <= joined.size(); ++cut) {
      if (static_cast<int>(cut) > s.headshunt) continue;
      if (static_cast<int>(joined.size() - cut) > s.sidings[r - 1]) continue;
      Position q = p;
      q.tracks[0].assign(joined.begin(), joined.begin() + cut);
      q.tracks[r].assign(joined.begin() + cut, joined.end());
      if (q != p) out.push_back(q);
    }
  }
  return out;
}

inline std::vector<CardsState> card_neighbours(const CardsSpec& s, const CardsState& c) {
  std::vector<CardsState> out;
  for (std::size_t i = 0; i < c.piles.size(); ++i) {
    if (c.piles[i].empty()) continue;
    for (std::size_t j = 0; j < c.piles.size(); ++j) {
      if (i == j || static_cast<int>(c.piles[j].size()) >= s.capacities[j]) continue;
      CardsState d = c;
      d.piles[j].push_back(d.piles[i].back());
      d.piles[i].pop_back();
      out.push_back(d);
    }
  }
  return out;
}

template <class State, class Nbrs>
std::map<State, int> bfs(const State& from, Nbrs nbrs) {
  std::map<State, int> dist{{from, 0}};
  std::deque<State> q{from};
  while (!q.empty()) {
    State x = q.front();
    q.pop_front();
    for (const State& y : nbrs(x)) {
      if (dist.emplace(y, dist[x] + 1).second) q.push_back(y);
    }
  }
  return dist;
}

template <class State, class Nbrs>
int component_count(const std::vector<State>& all, Nbrs nbrs) {
  std::set<State> left(all.begin(), all.end());
  int n = 0;
  while (!left.empty()) {
    ++n;
    for (const auto& [x, d] : bfs(*left.begin(), nbrs)) left.erase(x);
  }
  return n;
}

inline std::vector<Position> all_positions(const PuzzleSpec& s) {
  std::vector<Position> out;
  for (auto& t : all_layouts(caps_of(s), s.wagons)) out.push_back(Position{std::move(t)});
  return out;
}

inline std::vector<CardsState> all_card_states(const CardsSpec& s) {
  std::vector<CardsState> out;
  for (auto& t : all_layouts(s.capacities, s.cards)) out.push_back(CardsState{std::move(t)});
  return out;
}

// The solvability rule restated from scratch for natural puzzles.
inline bool rule_solvable(const PuzzleSpec& sp) {
  const int w = sp.wagons, h = sp.headshunt, s = static_cast<int>(sp.sidings.size());
  int sum = 0, big = h - 1;
  for (int m : sp.sidings) {
    sum += m;
    big = std::max(big, m);
  }
  const bool ineq = h - 1 + sum >= w + big;
  if (w == 1) return true;
  if (h > 1) return s > 1 && ineq;
  return s > 2 && ineq;
}

inline bool rule_connected(const CardsSpec& sp) {
  if (sp.cards == 1) return true;
  if (sp.capacities.size() <= 2) return false;
  int sum = 0, big = 0;
  for (int m : sp.capacities) {
    sum += m;
    big = std::max(big, m);
  }
  return sum >= sp.cards + big;
}

// Calls f for every capacity vector of length 1..max_len with entries in 1..max_cap.
inline void for_each_caps(int max_len, int max_cap, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur;
  std::function<void()> rec = [&] {
    if (!cur.empty()) f(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int m = 1; m <= max_cap; ++m) {
      cur.push_back(m);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

}  // namespace oracle
