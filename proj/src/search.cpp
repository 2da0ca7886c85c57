#include "inglenook/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <numeric>
#include <queue>
#include <sstream>
#include <thread>

#include "inglenook/feasibility.hpp"
#include "inglenook/state_space.hpp"

namespace inglenook {

namespace {

constexpr std::uint16_t kUnseen = 0xFFFF;

std::string refusal_text(std::uint64_t budget, long double estimated) {
  std::ostringstream os;
  os << "refused: about " << std::llround(static_cast<double>(estimated))
     << " states of work exceeds the budget of " << budget;
  return os.str();
}

void check_budget(const std::vector<int>& caps, int items, std::uint64_t budget, bool squared) {
  const long double n = StateSpace::estimate_size(caps, items);
  const long double work = squared ? n * n : n;
  if (work > static_cast<long double>(budget) || items > kMaxIndexedItems ||
      static_cast<int>(caps.size()) > kMaxIndexedTracks) {
    throw ResourceRefusal(budget, work);
  }
}

std::vector<int> track_capacities(const PuzzleSpec& spec) {
  std::vector<int> caps{spec.headshunt};
  caps.insert(caps.end(), spec.sidings.begin(), spec.sidings.end());
  return caps;
}

// Runs f(begin, end, chunk) over [0, n) split into contiguous chunks, one per
// worker. Chunk results are combined by the caller in chunk order.
template <class F>
void parallel_chunks(std::uint64_t n, unsigned chunks, F&& f) {
  if (chunks <= 1 || n < 4096) {
    f(std::uint64_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(chunks);
  for (unsigned c = 0; c < chunks; ++c) {
    const std::uint64_t lo = n * c / chunks;
    const std::uint64_t hi = n * (c + 1) / chunks;
    pool.emplace_back([&, lo, hi, c] {
      try {
        f(lo, hi, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

unsigned chunk_count(unsigned threads, std::uint64_t n) {
  return n < 4096 ? 1u : std::max(1u, threads);
}

Position position_at(const StateSpace& sp, std::uint64_t r) { return Position{sp.expand(sp.unrank(r))}; }

// Level-synchronous breadth-first search over a dense state space. Each level's
// frontier is sorted, so results do not depend on the worker count.
class LevelBfs {
 public:
  LevelBfs(const StateSpace& sp, std::vector<std::uint64_t> sources, unsigned threads)
      : sp_(sp), threads_(std::max(1u, threads)), dist_(sp.size(), kUnseen) {
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    for (auto r : sources) dist_[r] = 0;
    frontier_ = std::move(sources);
    visited_ = frontier_.size();
    peak_ = frontier_.size();
  }

  const std::vector<std::uint64_t>& frontier() const { return frontier_; }
  int level() const { return level_; }
  std::uint16_t dist(std::uint64_t r) const { return dist_[r]; }
  std::uint64_t visited() const { return visited_; }
  std::uint64_t peak() const { return peak_; }

  // Expands the current frontier; false once nothing new is reached.
  bool step() {
    if (level_ + 1 >= kUnseen) throw std::overflow_error("search depth exceeds 65534");
    const auto next_level = static_cast<std::uint16_t>(level_ + 1);
    const unsigned chunks = chunk_count(threads_, frontier_.size());
    std::vector<std::vector<std::uint64_t>> found(chunks);
    parallel_chunks(frontier_.size(), chunks, [&](std::uint64_t lo, std::uint64_t hi, unsigned c) {
      std::vector<std::uint64_t> nbrs;
      for (std::uint64_t i = lo; i < hi; ++i) {
        nbrs.clear();
        sp_.neighbors(frontier_[i], nbrs);
        for (auto y : nbrs) {
          std::atomic_ref<std::uint16_t> slot(dist_[y]);
          std::uint16_t expected = kUnseen;
          if (slot.load(std::memory_order_relaxed) == kUnseen &&
              slot.compare_exchange_strong(expected, next_level, std::memory_order_relaxed)) {
            found[c].push_back(y);
          }
        }
      }
    });
    std::vector<std::uint64_t> next;
    std::size_t total = 0;
    for (const auto& f : found) total += f.size();
    next.reserve(total);
    for (const auto& f : found) next.insert(next.end(), f.begin(), f.end());
    std::sort(next.begin(), next.end());
    frontier_ = std::move(next);
    ++level_;
    visited_ += frontier_.size();
    peak_ = std::max<std::uint64_t>(peak_, frontier_.size());
    return !frontier_.empty();
  }

  void run() {
    while (step()) {
    }
  }

 private:
  const StateSpace& sp_;
  unsigned threads_;
  std::vector<std::uint16_t> dist_;
  std::vector<std::uint64_t> frontier_;
  int level_ = 0;
  std::uint64_t visited_ = 0;
  std::uint64_t peak_ = 0;
};

// Smallest index i in [0, n) with pred(i), scanning in parallel.
template <class Pred>
std::optional<std::uint64_t> first_matching(std::uint64_t n, unsigned threads, Pred&& pred) {
  const unsigned chunks = chunk_count(threads, n);
  std::vector<std::optional<std::uint64_t>> hit(chunks);
  parallel_chunks(n, chunks, [&](std::uint64_t lo, std::uint64_t hi, unsigned c) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (pred(i)) {
        hit[c] = i;
        return;
      }
    }
  });
  for (const auto& h : hit) {
    if (h) return h;
  }
  return std::nullopt;
}

// All i in [0, n) with pred(i), ascending.
template <class Pred>
std::vector<std::uint64_t> all_matching(std::uint64_t n, unsigned threads, Pred&& pred) {
  const unsigned chunks = chunk_count(threads, n);
  std::vector<std::vector<std::uint64_t>> hits(chunks);
  parallel_chunks(n, chunks, [&](std::uint64_t lo, std::uint64_t hi, unsigned c) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (pred(i)) hits[c].push_back(i);
    }
  });
  std::vector<std::uint64_t> out;
  for (const auto& h : hits) out.insert(out.end(), h.begin(), h.end());
  return out;
}

Census census_of(const StateSpace& sp) {
  if (sp.size() >= UINT32_MAX) throw ResourceRefusal(UINT32_MAX, static_cast<long double>(sp.size()));
  std::vector<std::uint32_t> parent(sp.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::uint64_t> nbrs;
  for (std::uint64_t r = 0; r < sp.size(); ++r) {
    nbrs.clear();
    sp.neighbors(r, nbrs);
    for (auto y : nbrs) {
      const auto a = find(static_cast<std::uint32_t>(r));
      const auto b = find(static_cast<std::uint32_t>(y));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::uint64_t> count(sp.size(), 0);
  for (std::uint64_t r = 0; r < sp.size(); ++r) ++count[find(static_cast<std::uint32_t>(r))];
  Census c;
  c.states = sp.size();
  for (auto n : count) {
    if (n > 0) c.sizes.push_back(n);
  }
  std::sort(c.sizes.rbegin(), c.sizes.rend());
  return c;
}

// Plain single-source BFS; returns the eccentricity and the number reached.
std::pair<int, std::uint64_t> eccentricity(const StateSpace& sp, std::uint64_t src,
                                           std::vector<std::uint16_t>& dist,
                                           std::vector<std::uint64_t>& queue) {
  std::fill(dist.begin(), dist.end(), kUnseen);
  queue.clear();
  queue.push_back(src);
  dist[src] = 0;
  std::vector<std::uint64_t> nbrs;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto x = queue[head];
    nbrs.clear();
    sp.neighbors(x, nbrs);
    for (auto y : nbrs) {
      if (dist[y] == kUnseen) {
        dist[y] = static_cast<std::uint16_t>(dist[x] + 1);
        queue.push_back(y);
      }
    }
  }
  return {dist[queue.back()], queue.size()};
}

int diameter_of(const StateSpace& sp, unsigned threads) {
  std::vector<std::uint16_t> dist(sp.size());
  std::vector<std::uint64_t> queue;
  if (eccentricity(sp, 0, dist, queue).second != sp.size()) throw Disconnected(census_of(sp));
  const unsigned chunks = chunk_count(threads, sp.size() * sp.size());
  std::vector<int> best(chunks, 0);
  parallel_chunks(sp.size(), chunks, [&](std::uint64_t lo, std::uint64_t hi, unsigned c) {
    std::vector<std::uint16_t> d(sp.size());
    std::vector<std::uint64_t> q;
    for (std::uint64_t r = lo; r < hi; ++r) best[c] = std::max(best[c], eccentricity(sp, r, d, q).first);
  });
  return *std::max_element(best.begin(), best.end());
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

}  // namespace

ResourceRefusal::ResourceRefusal(std::uint64_t budget, long double estimated)
    : std::runtime_error(refusal_text(budget, estimated)), budget_(budget), estimated_(estimated) {}

Disconnected::Disconnected(Census census)
    : std::runtime_error("graph is disconnected: " + std::to_string(census.components()) +
                         " components"),
      census_(std::move(census)) {}

SearchReport optimal_solve(const PuzzleSpec& spec, const Position& start, const GoalPattern& goal,
                           const SearchOptions& opts) {
  validate(spec, start);
  goal.check_satisfiable(spec);
  check_budget(track_capacities(spec), spec.wagons, opts.budget, false);
  const StateSpace sp = StateSpace::for_puzzle(spec);

  LevelBfs bfs(sp, {sp.rank(sp.flatten(start.tracks))}, opts.threads);
  std::optional<std::uint64_t> target;
  while (true) {
    const auto& f = bfs.frontier();
    const auto i = first_matching(f.size(), opts.threads,
                                  [&](std::uint64_t k) { return goal.matches(position_at(sp, f[k])); });
    if (i) {
      target = f[*i];
      break;
    }
    if (!bfs.step()) break;
  }

  SearchReport report;
  report.explored = bfs.visited();
  report.peak_frontier = bfs.peak();
  report.trace.start = start;
  if (!target) {
    report.trace.finish = start;
    return report;
  }

  // Walk back from the target, choosing the smallest forward move at each step.
  std::uint64_t x = *target;
  int d = bfs.dist(x);
  std::vector<ShuntMove> moves;
  while (d > 0) {
    std::optional<std::pair<ShuntMove, std::uint64_t>> best;
    sp.for_each_shunt(sp.unrank(x), [&](const ShuntMove& m, const FlatState& t) {
      const auto r = sp.rank(t);
      if (bfs.dist(r) != d - 1) return;
      const ShuntMove forward = m.inverse();
      if (!best || forward < best->first) best = {forward, r};
    });
    moves.push_back(best->first);
    x = best->second;
    --d;
  }
  std::reverse(moves.begin(), moves.end());
  report.distance = bfs.dist(*target);
  report.trace.moves = std::move(moves);
  report.trace.finish = position_at(sp, *target);
  if (replay(spec, start, report.trace.moves) != report.trace.finish) {
    throw std::logic_error("optimal trace does not replay");
  }
  return report;
}

WorstCase worst_case_moves(const PuzzleSpec& spec, const GoalPattern& start_pattern,
                           const GoalPattern& goal, const SearchOptions& opts, bool over_orbit) {
  spec.validate();
  goal.check_satisfiable(spec);
  start_pattern.check_satisfiable(spec);
  check_budget(track_capacities(spec), spec.wagons, opts.budget, false);
  const StateSpace sp = StateSpace::for_puzzle(spec);

  // Relabelling wagons is a graph automorphism, so the maximum over renamed
  // goals equals the maximum over renamed starts.
  auto is_start = [&](const Position& p) {
    return over_orbit ? start_pattern.shape_matches(p) : start_pattern.matches(p);
  };
  auto sources = all_matching(sp.size(), opts.threads,
                              [&](std::uint64_t r) { return goal.matches(position_at(sp, r)); });
  LevelBfs bfs(sp, std::move(sources), opts.threads);
  bfs.run();

  const unsigned chunks = chunk_count(opts.threads, sp.size());
  struct Partial {
    int max = -1;
    std::uint64_t witness = 0;
    std::uint64_t starts = 0;
    std::uint64_t unreachable = 0;
  };
  std::vector<Partial> parts(chunks);
  parallel_chunks(sp.size(), chunks, [&](std::uint64_t lo, std::uint64_t hi, unsigned c) {
    Partial& p = parts[c];
    for (std::uint64_t r = lo; r < hi; ++r) {
      if (!is_start(position_at(sp, r))) continue;
      ++p.starts;
      const auto d = bfs.dist(r);
      if (d == kUnseen) {
        ++p.unreachable;
      } else if (d > p.max) {
        p.max = d;
        p.witness = r;
      }
    }
  });
  WorstCase out;
  Partial total;
  for (const Partial& p : parts) {
    total.starts += p.starts;
    total.unreachable += p.unreachable;
    if (p.max > total.max) {
      total.max = p.max;
      total.witness = p.witness;
    }
  }
  out.max_distance = std::max(total.max, 0);
  out.witness = position_at(sp, total.witness);
  out.starts = total.starts;
  out.unreachable = total.unreachable;
  out.explored = bfs.visited();
  return out;
}

Census cards_component_census(const CardsSpec& spec, const SearchOptions& opts) {
  spec.validate();
  check_budget(spec.capacities, spec.cards, opts.budget, false);
  return census_of(StateSpace::for_cards(spec));
}

Census inglenook_component_census(const PuzzleSpec& spec, const SearchOptions& opts) {
  spec.validate();
  check_budget(track_capacities(spec), spec.wagons, opts.budget, false);
  return census_of(StateSpace::for_puzzle(spec));
}

int cards_diameter(const CardsSpec& spec, const SearchOptions& opts) {
  spec.validate();
  check_budget(spec.capacities, spec.cards, opts.budget, true);
  const int diameter = diameter_of(StateSpace::for_cards(spec), opts.threads);
  const int w = spec.cards;
  if (spec.capacities == std::vector<int>{w - 1, w - 1, 1}) {
    const long lower = ceil_div(static_cast<long>(w) * w - 1, 4);
    if (diameter < lower || diameter > cards_move_bound(w)) {
      throw std::logic_error("diameter " + std::to_string(diameter) + " outside [" +
                             std::to_string(lower) + ", " + std::to_string(cards_move_bound(w)) + "]");
    }
  }
  return diameter;
}

int inglenook_diameter(const PuzzleSpec& spec, const SearchOptions& opts) {
  spec.validate();
  check_budget(track_capacities(spec), spec.wagons, opts.budget, true);
  return diameter_of(StateSpace::for_puzzle(spec), opts.threads);
}

std::optional<int> cards_distance(const CardsSpec& spec, const CardsState& from, const CardsState& to,
                                  const SearchOptions& opts) {
  validate(spec, from);
  validate(spec, to);
  check_budget(spec.capacities, spec.cards, opts.budget, false);
  const StateSpace sp = StateSpace::for_cards(spec);
  const auto target = sp.rank(sp.flatten(to.piles));
  LevelBfs bfs(sp, {sp.rank(sp.flatten(from.piles))}, opts.threads);
  while (bfs.dist(target) == kUnseen) {
    if (!bfs.step()) return std::nullopt;
  }
  return bfs.dist(target);
}

ReversalReport reversal_distance(int w, const SearchOptions& opts) {
  if (w < 2) throw std::invalid_argument("reversal distance needs at least 2 wagons");
  ReversalReport rep;
  rep.spec = PuzzleSpec{w, 1, {w - 1, w - 1, 1}};
  rep.spec.validate();
  const CardsSpec cards = cards_spec_for(rep.spec);

  CardsState z{std::vector<Track>(3)};
  CardsState z_rev{std::vector<Track>(3)};
  for (int i = 1; i < w; ++i) z.piles[0].push_back(static_cast<Wagon>(i));
  z.piles[1].push_back(static_cast<Wagon>(w));
  for (int i = w; i >= 2; --i) z_rev.piles[0].push_back(static_cast<Wagon>(i));
  z_rev.piles[1].push_back(1);
  rep.from = from_cards(rep.spec, z);
  rep.to = from_cards(rep.spec, z_rev);

  const SearchReport sr = optimal_solve(rep.spec, rep.from, GoalPattern::exact(rep.to), opts);
  const auto cd = cards_distance(cards, z, z_rev, opts);
  if (!sr.distance || !cd) throw std::logic_error("reversal endpoints are not connected");
  rep.distance = *sr.distance;
  rep.cards_distance = *cd;
  rep.trace = sr.trace;

  // Every other position on the path has an empty headshunt; consecutive ones
  // differ by a single card move.
  bool holds = rep.trace.length() % 2 == 0;
  Position p = rep.from;
  CardsState c = z;
  for (std::size_t i = 0; holds && i + 1 < rep.trace.moves.size(); i += 2) {
    const ShuntMove& pull = rep.trace.moves[i];
    const ShuntMove& push = rep.trace.moves[i + 1];
    holds = pull.direction == Direction::Pull && push.direction == Direction::Push &&
            pull.count == 1 && push.count == 1 && pull.siding != push.siding;
    if (!holds) break;
    p = apply_move(rep.spec, apply_move(rep.spec, p, pull), push);
    c = apply_card_move(cards, c, {pile_of_track(rep.spec, pull.siding), pile_of_track(rep.spec, push.siding)});
    holds = is_convertible(rep.spec, p) && to_cards(rep.spec, p) == c;
  }
  rep.correspondence_holds = holds && c == z_rev;

  const long lower = ceil_div(static_cast<long>(w) * w - 1, 2);
  if (rep.distance < lower || rep.distance != 2 * rep.cards_distance || !rep.correspondence_holds) {
    throw std::logic_error("reversal distance " + std::to_string(rep.distance) +
                           " breaks the lower bound or the two-to-one correspondence");
  }
  return rep;
}

Reach inglenook_reach(const PuzzleSpec& spec, const Position& from, const SearchOptions& opts) {
  validate(spec, from);
  check_budget(track_capacities(spec), spec.wagons, opts.budget, false);
  const StateSpace sp = StateSpace::for_puzzle(spec);
  const std::uint64_t words = (sp.size() + 63) / 64;
  std::vector<std::uint64_t> seen(words, 0), cur(words, 0), next(words, 0);
  const auto src = sp.rank(sp.flatten(from.tracks));
  seen[src / 64] |= 1ull << (src % 64);
  cur[src / 64] |= 1ull << (src % 64);
  Reach out;
  out.states = sp.size();
  out.reached = 1;
  const unsigned chunks = chunk_count(std::max(1u, opts.threads), words);
  while (true) {
    std::fill(next.begin(), next.end(), 0);
    parallel_chunks(words, chunks, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
      std::vector<std::uint64_t> nbrs;
      for (std::uint64_t wi = lo; wi < hi; ++wi) {
        for (std::uint64_t bits = cur[wi]; bits != 0; bits &= bits - 1) {
          nbrs.clear();
          sp.neighbors(wi * 64 + static_cast<unsigned>(std::countr_zero(bits)), nbrs);
          for (auto y : nbrs) {
            const std::uint64_t bit = 1ull << (y % 64);
            if ((seen[y / 64] & bit) == 0) {
              std::atomic_ref<std::uint64_t>(next[y / 64]).fetch_or(bit, std::memory_order_relaxed);
            }
          }
        }
      }
    });
    std::uint64_t fresh = 0;
    for (std::uint64_t wi = 0; wi < words; ++wi) {
      next[wi] &= ~seen[wi];
      seen[wi] |= next[wi];
      fresh += static_cast<std::uint64_t>(std::popcount(next[wi]));
    }
    if (fresh == 0) break;
    out.reached += fresh;
    ++out.eccentricity;
    std::swap(cur, next);
  }
  return out;
}

long displacement(const std::vector<Wagon>& x, const std::vector<Wagon>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("orderings differ in length");
  std::array<long, kMaxLabel + 1> at{};
  at.fill(-1);
  for (std::size_t i = 0; i < y.size(); ++i) at[y[i]] = static_cast<long>(i);
  long d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (at[x[i]] < 0) throw std::invalid_argument("orderings hold different labels");
    d += std::labs(static_cast<long>(i) - at[x[i]]);
  }
  return d;
}

}  // namespace inglenook
