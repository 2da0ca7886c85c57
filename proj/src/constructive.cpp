#include "inglenook/constructive.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

namespace inglenook {

namespace {

// Mutable working state for one level of the construction. Card labels are
// arbitrary (levels below the top have cards removed).
class Board {
 public:
  Board(std::vector<int> caps, CardsState state, std::vector<CardMove>& out)
      : caps_(std::move(caps)), s_(std::move(state)), out_(out) {}

  int piles() const { return static_cast<int>(caps_.size()); }
  int size(int i) const { return static_cast<int>(s_.piles[i].size()); }
  int space(int i) const { return caps_[i] - size(i); }
  Wagon top(int i) const { return s_.piles[i].back(); }
  bool bottom_is(int i, Wagon c) const { return !s_.piles[i].empty() && s_.piles[i].front() == c; }
  const CardsState& state() const { return s_; }

  int pile_of(Wagon c) const {
    for (int i = 0; i < piles(); ++i) {
      if (std::find(s_.piles[i].begin(), s_.piles[i].end(), c) != s_.piles[i].end()) return i;
    }
    throw std::logic_error("card " + std::to_string(c) + " not on the board");
  }

  int space_except(int excluded) const {
    int total = 0;
    for (int i = 0; i < piles(); ++i) {
      if (i != excluded) total += space(i);
    }
    return total;
  }

  void move(int from, int to) {
    if (from == to || s_.piles[from].empty() || space(to) <= 0) {
      throw std::logic_error("construction produced an illegal card move " +
                             std::to_string(from) + " -> " + std::to_string(to));
    }
    s_.piles[to].push_back(s_.piles[from].back());
    s_.piles[from].pop_back();
    out_.push_back({from, to});
  }

  // Smallest pile index not in `skip` with more than `reserve(i)` spaces.
  template <class Skip, class Reserve>
  std::optional<int> first_with_space(Skip skip, Reserve reserve) const {
    for (int i = 0; i < piles(); ++i) {
      if (!skip(i) && space(i) > reserve(i)) return i;
    }
    return std::nullopt;
  }

 private:
  std::vector<int> caps_;
  CardsState s_;
  std::vector<CardMove>& out_;
};

int card_count(const CardsState& c) {
  int n = 0;
  for (const auto& p : c.piles) n += static_cast<int>(p.size());
  return n;
}

auto no_reserve = [](int) { return 0; };

// Every pile holds at most one card: fix cards whose target pile is empty,
// then resolve the remaining cycles by transpositions through an empty pile,
// three moves each.
void permute_unit_piles(Board& board, const CardsState& goal) {
  const int n = board.piles();
  auto target_of = [&](Wagon c) {
    for (int i = 0; i < n; ++i) {
      if (!goal.piles[i].empty() && goal.piles[i].front() == c) return i;
    }
    throw std::logic_error("card missing from goal");
  };
  while (true) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int i = 0; i < n; ++i) {
        if (board.size(i) == 0) continue;
        const int t = target_of(board.top(i));
        if (t != i && board.size(t) == 0) {
          board.move(i, t);
          progress = true;
        }
      }
    }
    int p = -1;
    for (int i = 0; i < n && p < 0; ++i) {
      if (board.size(i) == 1 && target_of(board.top(i)) != i) p = i;
    }
    if (p < 0) return;
    int empty = -1;
    for (int i = 0; i < n && empty < 0; ++i) {
      if (board.size(i) == 0) empty = i;
    }
    if (empty < 0) throw std::logic_error("no empty pile for a transposition");
    const int q = target_of(board.top(p));
    board.move(p, empty);
    board.move(q, p);
    board.move(empty, q);
  }
}

// Moves cards until the bottom of pile k is card b.
void seat_bottom_card(Board& board, int k, Wagon b, CardsAudit* audit) {
  if (board.bottom_is(k, b)) return;

  int from = board.pile_of(b);
  if (from != k) {
    // Bring b into pile k.
    if (board.space(k) == 0) {
      auto dest = board.first_with_space([&](int i) { return i == k || i == from; }, no_reserve);
      board.move(k, dest ? *dest : from);
    }
    if (audit != nullptr) ++audit->space_checks;
    if (board.space_except(from) < board.size(from)) {
      throw std::logic_error("free space outside the pile holding b is below its card count");
    }
    while (board.top(from) != b) {
      // Fill pile k last.
      auto dest = board.first_with_space([&](int i) { return i == k || i == from; }, no_reserve);
      board.move(from, dest ? *dest : k);
    }
    board.move(from, k);
    if (board.bottom_is(k, b)) return;
  }

  // Two other piles u and v with space.
  if (board.space_except(k) < 2) {
    auto src = std::optional<int>{};
    for (int i = 0; i < board.piles() && !src; ++i) {
      if (i != k && board.size(i) > 0) src = i;
    }
    if (!src) throw std::logic_error("no card available to free space outside pile k");
    board.move(*src, k);
  }
  std::vector<int> open;
  for (int i = 0; i < board.piles(); ++i) {
    if (i != k && board.space(i) > 0) open.push_back(i);
  }
  if (open.empty()) throw std::logic_error("no free pile outside pile k");
  if (open.size() == 1) {
    const int p = open.front();
    int q = -1;
    for (int i = 0; i < board.piles() && q < 0; ++i) {
      if (i != k && i != p && board.size(i) > 0) q = i;
    }
    if (q < 0) throw std::logic_error("need a third pile");
    board.move(q, p);
    open = {std::min(p, q), std::max(p, q)};
  }
  const int u = open[0];
  const int v = open[1];

  // Uncover b, keeping a space in both u and v.
  if (audit != nullptr) ++audit->space_checks;
  if (board.space_except(k) < board.size(k)) {
    throw std::logic_error("free space outside pile k is below its card count");
  }
  while (board.top(k) != b) {
    auto dest = board.first_with_space([&](int i) { return i == k; },
                                       [&](int i) { return i == u || i == v ? 1 : 0; });
    if (!dest) throw std::logic_error("no destination while uncovering b");
    board.move(k, *dest);
  }

  // Park b on u, drain pile k without ever covering b, then seat b.
  board.move(k, u);
  int host = u;
  while (board.size(k) > 0) {
    const int other = host == u ? v : u;
    if (board.space(host) > 0 && board.space(other) == 1) {
      board.move(host, other);
      host = other;
    }
    auto dest = board.first_with_space([&](int i) { return i == k || i == host; }, no_reserve);
    if (!dest) throw std::logic_error("no destination while draining pile k");
    board.move(k, *dest);
  }
  board.move(host, k);
}

std::vector<CardMove> solve_level(const std::vector<int>& caps, const CardsState& start,
                                  const CardsState& goal, CardsAudit* audit) {
  std::vector<CardMove> moves;
  if (start == goal) return moves;
  const int n = card_count(start);
  Board board(caps, start, moves);

  if (n == 1) {
    int from = -1, to = -1;
    for (int i = 0; i < board.piles(); ++i) {
      if (!start.piles[i].empty()) from = i;
      if (!goal.piles[i].empty()) to = i;
    }
    board.move(from, to);
    return moves;
  }

  const auto big = std::find_if(caps.begin(), caps.end(), [](int m) { return m >= 2; });
  if (big == caps.end()) {
    permute_unit_piles(board, goal);
    return moves;
  }
  const int k = static_cast<int>(big - caps.begin());

  // Neighbour of the goal with pile k nonempty.
  CardsState near_goal = goal;
  std::optional<CardMove> last_edge;
  if (goal.piles[k].empty()) {
    int j = 0;
    while (near_goal.piles[j].empty()) ++j;
    near_goal.piles[k].push_back(near_goal.piles[j].back());
    near_goal.piles[j].pop_back();
    last_edge = CardMove{k, j};
  }
  const Wagon b = near_goal.piles[k].front();

  seat_bottom_card(board, k, b, audit);
  const std::size_t level_cost = moves.size() + (last_edge ? 1 : 0);

  // The rest never touches b: one card fewer, pile k one shorter.
  std::vector<int> reduced_caps = caps;
  --reduced_caps[k];
  CardsState reduced_start = board.state();
  CardsState reduced_goal = near_goal;
  reduced_start.piles[k].erase(reduced_start.piles[k].begin());
  reduced_goal.piles[k].erase(reduced_goal.piles[k].begin());
  const auto rest = solve_level(reduced_caps, reduced_start, reduced_goal, audit);

  CardsState full = board.state();
  for (const CardMove& mv : rest) {
    board.move(mv.from, mv.to);
    if (audit != nullptr) ++audit->seated_checks;
    if (!board.bottom_is(k, b)) throw std::logic_error("seated card left the bottom of its pile");
  }
  if (board.state().piles != near_goal.piles) {
    throw std::logic_error("recursive step did not reach the goal neighbour");
  }
  if (last_edge) board.move(last_edge->from, last_edge->to);
  if (audit != nullptr) {
    ++audit->levels;
    audit->max_level_cost = std::max(audit->max_level_cost, level_cost);
  }
  return moves;
}

ShuntMove push_to_first_open_siding(const PuzzleSpec& spec, const Position& p) {
  for (int r = 1; r <= spec.siding_count(); ++r) {
    if (static_cast<int>(p.tracks[r].size()) < spec.sidings[r - 1]) return {r, Direction::Push, 1};
  }
  throw std::logic_error("no siding has space");
}

}  // namespace

long cards_move_bound(int w) { return static_cast<long>(w) * w + 6L * w - 6; }
long shunt_move_bound(int w) { return 2L * w * w + 12L * w - 10; }

CardsTrace solve_cards(const CardsSpec& spec, const CardsState& start, const CardsState& goal,
                       CardsAudit* audit) {
  const FeasibilityVerdict verdict = cards_connected(spec);
  validate(spec, start);
  validate(spec, goal);
  if (!verdict.solvable) {
    throw Infeasible("cards graph is disconnected (" + std::string(branch_name(verdict.branch)) +
                         ", slack " + std::to_string(verdict.slack) + ")",
                     verdict);
  }
  CardsTrace trace{start, goal, solve_level(spec.capacities, start, goal, audit)};
  if (static_cast<long>(trace.length()) > cards_move_bound(spec.cards)) {
    throw std::logic_error("card trace of length " + std::to_string(trace.length()) +
                           " exceeds the bound " + std::to_string(cards_move_bound(spec.cards)));
  }
  if (replay(spec, start, trace.moves) != goal) {
    throw std::logic_error("card trace does not reach the goal");
  }
  return trace;
}

std::vector<ShuntMove> lift_card_move(const PuzzleSpec& spec, const CardMove& mv) {
  const int from = track_of_pile(spec, mv.from);
  const int to = track_of_pile(spec, mv.to);
  if (from == 0) return {{to, Direction::Push, 1}};
  if (to == 0) return {{from, Direction::Pull, 1}};
  return {{from, Direction::Pull, 1}, {to, Direction::Push, 1}};
}

ShuntTrace solve_inglenook(const PuzzleSpec& spec, const Position& start, const Position& goal,
                           CardsAudit* audit) {
  const FeasibilityVerdict verdict = inglenook_solvable(spec);
  validate(spec, start);
  validate(spec, goal);
  if (!verdict.solvable) {
    throw Infeasible("puzzle cannot always be solved (" + std::string(branch_name(verdict.branch)) +
                         ", slack " + std::to_string(verdict.slack) + ")",
                     verdict);
  }
  ShuntTrace trace{start, goal, {}};
  if (start == goal) return trace;

  Position from = start;
  if (!is_convertible(spec, from)) {
    const ShuntMove first = push_to_first_open_siding(spec, from);
    trace.moves.push_back(first);
    from = apply_move(spec, from, first);
  }
  Position to = goal;
  std::optional<ShuntMove> tail;
  if (!is_convertible(spec, goal)) {
    const ShuntMove step = push_to_first_open_siding(spec, goal);
    to = apply_move(spec, goal, step);
    tail = step.inverse();
  }

  const CardsSpec cards = cards_spec_for(spec);
  const CardsTrace ct = solve_cards(cards, to_cards(spec, from), to_cards(spec, to), audit);
  for (const CardMove& mv : ct.moves) {
    for (const ShuntMove& sm : lift_card_move(spec, mv)) trace.moves.push_back(sm);
  }
  if (tail) trace.moves.push_back(*tail);

  if (static_cast<long>(trace.length()) > shunt_move_bound(spec.wagons)) {
    throw std::logic_error("shunting trace of length " + std::to_string(trace.length()) +
                           " exceeds the bound " + std::to_string(shunt_move_bound(spec.wagons)));
  }
  if (replay(spec, start, trace.moves) != goal) {
    throw std::logic_error("shunting trace does not reach the goal");
  }
  return trace;
}

ShuntTrace solve_to_pattern(const PuzzleSpec& spec, const Position& start, const GoalPattern& goal) {
  goal.check_satisfiable(spec);
  validate(spec, start);
  if (goal.matches(start)) return ShuntTrace{start, start, {}};
  return solve_inglenook(spec, start, goal.least_match(spec));
}

Position replay(const PuzzleSpec& spec, const Position& start, const std::vector<ShuntMove>& moves) {
  Position p = start;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    try {
      p = apply_move(spec, p, moves[i]);
    } catch (const IllegalMove& e) {
      throw IllegalMove("move " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return p;
}

CardsState replay(const CardsSpec& spec, const CardsState& start, const std::vector<CardMove>& moves) {
  CardsState c = start;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    try {
      c = apply_card_move(spec, c, moves[i]);
    } catch (const IllegalMove& e) {
      throw IllegalMove("move " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return c;
}

}  // namespace inglenook
