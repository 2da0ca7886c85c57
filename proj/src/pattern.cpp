#include "inglenook/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace inglenook {

namespace {

using u128 = unsigned __int128;

constexpr int kMaxSampledWagons = 25;

u128 factorial128(int n) {
  u128 f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<u128>(i);
  return f;
}

u128 uniform_below128(std::mt19937_64& rng, u128 n) {
  if (n <= static_cast<u128>(UINT64_MAX)) return uniform_below(rng, static_cast<std::uint64_t>(n));
  // Rejection over 128-bit draws; n > 2^64 so at most half of draws are wasted.
  const u128 limit = (~static_cast<u128>(0)) - ((~static_cast<u128>(0)) % n + 1) % n;
  while (true) {
    const u128 x = (static_cast<u128>(rng()) << 64) | rng();
    if (x <= limit) return x % n;
  }
}

struct Layout {
  std::vector<int> lengths;      // per track
  std::vector<int> any_tracks;   // indices with Kind::Any
  std::vector<Wagon> free;       // unmentioned wagons, ascending
};

// Empty list when consistent; otherwise one message per conflict.
std::vector<std::string> conflicts_of(const PuzzleSpec& spec, const PatternAlternative& alt,
                                      Layout* layout) {
  std::vector<std::string> out;
  if (static_cast<int>(alt.tracks.size()) != spec.track_count()) {
    out.push_back("pattern has " + std::to_string(alt.tracks.size()) + " tracks, spec has " +
                  std::to_string(spec.track_count()));
    return out;
  }
  auto name = [](int t) { return t == 0 ? std::string("H") : "S" + std::to_string(t); };
  std::vector<int> owner(static_cast<std::size_t>(spec.wagons) + 1, -1);
  Layout l;
  l.lengths.assign(alt.tracks.size(), 0);
  int any_room = 0;
  int mentioned = 0;
  for (int t = 0; t < spec.track_count(); ++t) {
    const TrackConstraint& c = alt.tracks[t];
    if (c.kind == TrackConstraint::Kind::Any) {
      l.any_tracks.push_back(t);
      any_room += spec.capacity(t);
      continue;
    }
    const int n = static_cast<int>(c.wagons.size());
    if (n > spec.capacity(t)) {
      out.push_back(name(t) + " needs " + std::to_string(n) + " wagons but holds " +
                    std::to_string(spec.capacity(t)));
    }
    l.lengths[t] = n;
    for (Wagon x : c.wagons) {
      if (x < 1 || x > spec.wagons) {
        out.push_back(name(t) + " names wagon " + std::to_string(x) + " outside 1.." +
                      std::to_string(spec.wagons));
        continue;
      }
      if (owner[x] >= 0) {
        out.push_back("wagon " + std::to_string(x) + " required in both " + name(owner[x]) +
                      " and " + name(t));
        continue;
      }
      owner[x] = t;
      ++mentioned;
    }
  }
  const int free = spec.wagons - mentioned;
  if (free > any_room) {
    out.push_back(std::to_string(free) + " unconstrained wagons but only " +
                  std::to_string(any_room) + " places on unconstrained tracks");
  }
  if (layout != nullptr && out.empty()) {
    for (int x = 1; x <= spec.wagons; ++x) {
      if (owner[x] < 0) l.free.push_back(static_cast<Wagon>(x));
    }
    *layout = std::move(l);
  }
  return out;
}

// ways[i][n]: length vectors for any_tracks[i..] summing to n.
std::vector<std::vector<u128>> any_length_ways(const PuzzleSpec& spec, const Layout& l) {
  const int free = static_cast<int>(l.free.size());
  const std::size_t k = l.any_tracks.size();
  std::vector<std::vector<u128>> ways(k + 1, std::vector<u128>(free + 1, 0));
  ways[k][0] = 1;
  for (std::size_t i = k; i-- > 0;) {
    const int cap = spec.capacity(l.any_tracks[i]);
    for (int n = 0; n <= free; ++n) {
      for (int len = 0; len <= std::min(cap, n); ++len) ways[i][n] += ways[i + 1][n - len];
    }
  }
  return ways;
}

Position build(const PatternAlternative& alt, const Layout& l, const std::vector<Wagon>& free_order) {
  Position p;
  p.tracks.resize(alt.tracks.size());
  std::size_t next_free = 0;
  for (std::size_t t = 0; t < alt.tracks.size(); ++t) {
    const TrackConstraint& c = alt.tracks[t];
    if (c.kind == TrackConstraint::Kind::Any) {
      for (int i = 0; i < l.lengths[t]; ++i) p.tracks[t].push_back(free_order[next_free++]);
    } else {
      p.tracks[t] = c.wagons;
    }
  }
  return p;
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x <= limit) return x % n;
  }
}

bool TrackConstraint::matches(const Track& t) const {
  switch (kind) {
    case Kind::Any: return true;
    case Kind::Empty: return t.empty();
    case Kind::Exact: return t == wagons;
    case Kind::AnyOrder:
      return t.size() == wagons.size() &&
             std::is_permutation(t.begin(), t.end(), wagons.begin(), wagons.end());
  }
  return false;
}

bool TrackConstraint::shape_matches(const Track& t) const {
  return kind == Kind::Any || t.size() == wagons.size();
}

bool PatternAlternative::matches(const Position& p) const {
  if (p.tracks.size() != tracks.size()) return false;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (!tracks[i].matches(p.tracks[i])) return false;
  }
  return true;
}

bool PatternAlternative::shape_matches(const Position& p) const {
  if (p.tracks.size() != tracks.size()) return false;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (!tracks[i].shape_matches(p.tracks[i])) return false;
  }
  return true;
}

GoalPattern::GoalPattern(std::vector<PatternAlternative> alternatives)
    : alternatives_(std::move(alternatives)) {
  if (alternatives_.empty()) throw std::invalid_argument("a pattern needs at least one alternative");
}

GoalPattern GoalPattern::exact(const Position& p) {
  PatternAlternative alt;
  for (const Track& t : p.tracks) {
    TrackConstraint c;
    c.kind = t.empty() ? TrackConstraint::Kind::Empty : TrackConstraint::Kind::Exact;
    c.wagons = t;
    alt.tracks.push_back(std::move(c));
  }
  return GoalPattern({std::move(alt)});
}

GoalPattern GoalPattern::any(const PuzzleSpec& spec) {
  PatternAlternative alt;
  alt.tracks.resize(spec.track_count());
  return GoalPattern({std::move(alt)});
}

bool GoalPattern::matches(const Position& p) const {
  return std::any_of(alternatives_.begin(), alternatives_.end(),
                     [&](const PatternAlternative& a) { return a.matches(p); });
}

bool GoalPattern::shape_matches(const Position& p) const {
  return std::any_of(alternatives_.begin(), alternatives_.end(),
                     [&](const PatternAlternative& a) { return a.shape_matches(p); });
}

bool GoalPattern::label_free() const {
  for (const auto& a : alternatives_) {
    for (const auto& c : a.tracks) {
      if (!c.wagons.empty()) return false;
    }
  }
  return true;
}

void GoalPattern::check_satisfiable(const PuzzleSpec& spec) const {
  std::vector<std::string> all;
  for (std::size_t i = 0; i < alternatives_.size(); ++i) {
    auto c = conflicts_of(spec, alternatives_[i], nullptr);
    if (c.empty()) return;
    for (auto& msg : c) {
      all.push_back(alternatives_.size() > 1 ? "alternative " + std::to_string(i + 1) + ": " + msg
                                             : msg);
    }
  }
  std::string text = "unsatisfiable pattern";
  for (const auto& m : all) text += "\n  " + m;
  throw UnsatisfiablePattern(text);
}

Position GoalPattern::least_match(const PuzzleSpec& spec) const {
  check_satisfiable(spec);
  std::optional<std::string> best_key;
  Position best;
  for (const auto& alt : alternatives_) {
    Layout l;
    if (!conflicts_of(spec, alt, &l).empty()) continue;
    // Shortest feasible length on each unconstrained track, earliest first.
    int remaining = static_cast<int>(l.free.size());
    for (std::size_t i = 0; i < l.any_tracks.size(); ++i) {
      int later = 0;
      for (std::size_t j = i + 1; j < l.any_tracks.size(); ++j) later += spec.capacity(l.any_tracks[j]);
      const int len = std::max(0, remaining - later);
      l.lengths[l.any_tracks[i]] = len;
      remaining -= len;
    }
    PatternAlternative sorted = alt;
    for (auto& c : sorted.tracks) {
      if (c.kind == TrackConstraint::Kind::AnyOrder) std::sort(c.wagons.begin(), c.wagons.end());
    }
    Position p = build(sorted, l, l.free);
    std::string key = canonical_encoding(spec, p);
    if (!best_key || key < *best_key) {
      best_key = std::move(key);
      best = std::move(p);
    }
  }
  return best;
}

Position GoalPattern::sample(const PuzzleSpec& spec, std::mt19937_64& rng) const {
  check_satisfiable(spec);
  if (spec.wagons > kMaxSampledWagons) {
    throw ValidationError("sampling supports at most " + std::to_string(kMaxSampledWagons) +
                          " wagons");
  }
  struct Prepared {
    const PatternAlternative* alt;
    Layout layout;
    std::vector<std::vector<u128>> ways;
    u128 weight;
  };
  std::vector<Prepared> prepared;
  u128 total = 0;
  for (const auto& alt : alternatives_) {
    Layout l;
    if (!conflicts_of(spec, alt, &l).empty()) continue;
    auto ways = any_length_ways(spec, l);
    u128 weight = ways[0][l.free.size()] * factorial128(static_cast<int>(l.free.size()));
    for (const auto& c : alt.tracks) {
      if (c.kind == TrackConstraint::Kind::AnyOrder) weight *= factorial128(static_cast<int>(c.wagons.size()));
    }
    total += weight;
    prepared.push_back({&alt, std::move(l), std::move(ways), weight});
  }
  // Uniform over the union: pick an alternative by weight, sample inside it,
  // and accept with probability 1 / (number of alternatives matching).
  while (true) {
    u128 pick = uniform_below128(rng, total);
    std::size_t a = 0;
    while (pick >= prepared[a].weight) pick -= prepared[a++].weight;
    Prepared& pr = prepared[a];
    Layout l = pr.layout;
    int remaining = static_cast<int>(l.free.size());
    for (std::size_t i = 0; i < l.any_tracks.size(); ++i) {
      u128 r = uniform_below128(rng, pr.ways[i][remaining]);
      int len = 0;
      while (r >= pr.ways[i + 1][remaining - len]) r -= pr.ways[i + 1][remaining - len++];
      l.lengths[l.any_tracks[i]] = len;
      remaining -= len;
    }
    std::vector<Wagon> order = l.free;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[uniform_below(rng, i)]);
    }
    PatternAlternative shuffled = *pr.alt;
    for (auto& c : shuffled.tracks) {
      if (c.kind != TrackConstraint::Kind::AnyOrder) continue;
      for (std::size_t i = c.wagons.size(); i > 1; --i) {
        std::swap(c.wagons[i - 1], c.wagons[uniform_below(rng, i)]);
      }
    }
    Position p = build(shuffled, l, order);
    const auto hits = static_cast<std::uint64_t>(
        std::count_if(prepared.begin(), prepared.end(),
                      [&](const Prepared& q) { return q.alt->matches(p); }));
    if (hits == 1 || uniform_below(rng, hits) == 0) return p;
  }
}

GoalPattern parse_pattern(const PuzzleSpec& spec, std::string_view text, const LabelTable& labels) {
  std::vector<PatternAlternative> alts;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    const std::string& line = lines[n];
    std::string_view rest = line;
    auto col = [&](std::string_view part) { return static_cast<int>(part.data() - line.data()) + 1; };
    while (true) {
      const auto bar = rest.find("||");
      std::string_view piece = trim(rest.substr(0, bar));
      if (!piece.empty() && piece.front() != '#') {
        if (looks_like_position(piece)) {
          LabelTable copy = labels;
          try {
            alts.push_back(GoalPattern::exact(parse_position(spec, piece, copy)).alternatives().front());
          } catch (const ParseError& e) {
            throw ParseError(line_no, col(piece) + e.column() - 1, e.message());
          }
        } else {
          PatternAlternative alt;
          alt.tracks.resize(spec.track_count());
          std::vector<bool> given(spec.track_count(), false);
          std::string_view clauses = piece;
          while (!clauses.empty()) {
            const auto semi = clauses.find(';');
            std::string_view clause = trim(clauses.substr(0, semi));
            clauses = semi == std::string_view::npos ? std::string_view{} : clauses.substr(semi + 1);
            if (clause.empty()) continue;
            const auto op_at = clause.find_first_of("=~");
            if (op_at == std::string_view::npos) {
              throw ParseError(line_no, col(clause), "expected '<track> = ...' or '<track> ~ {...}'");
            }
            const std::string_view tname = trim(clause.substr(0, op_at));
            int track = -1;
            if (tname == "H") {
              track = 0;
            } else if (tname.size() >= 2 && tname[0] == 'S' &&
                       std::all_of(tname.begin() + 1, tname.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) &&
                       tname.size() < 6) {
              track = std::stoi(std::string(tname.substr(1)));
            }
            if (track < 0 || track >= spec.track_count() || (track == 0 && tname != "H")) {
              throw ParseError(line_no, col(clause), "unknown track '" + std::string(tname) + "'");
            }
            if (given[track]) {
              throw ParseError(line_no, col(clause), "track " + std::string(tname) + " constrained twice");
            }
            given[track] = true;
            const char op = clause[op_at];
            const std::string_view value = trim(clause.substr(op_at + 1));
            TrackConstraint c;
            const char open = op == '=' ? '[' : '{';
            const char close = op == '=' ? ']' : '}';
            if (op == '=' && value == "*") {
              c.kind = TrackConstraint::Kind::Any;
            } else if (value.size() >= 2 && value.front() == open && value.back() == close) {
              std::string_view inner = trim(value.substr(1, value.size() - 2));
              while (!inner.empty()) {
                const auto comma = inner.find(',');
                std::string_view tok = trim(inner.substr(0, comma));
                if (!labels.contains(tok)) {
                  throw ParseError(line_no, col(tok.empty() ? value : tok),
                                   "unknown wagon label '" + std::string(tok) + "'");
                }
                const Wagon x = labels.label(tok);
                if (std::find(c.wagons.begin(), c.wagons.end(), x) != c.wagons.end()) {
                  throw ParseError(line_no, col(tok), "wagon '" + std::string(tok) + "' listed twice");
                }
                c.wagons.push_back(x);
                if (comma == std::string_view::npos) break;
                inner = inner.substr(comma + 1);
              }
              if (c.wagons.empty()) {
                c.kind = TrackConstraint::Kind::Empty;
              } else {
                c.kind = op == '=' ? TrackConstraint::Kind::Exact : TrackConstraint::Kind::AnyOrder;
              }
            } else {
              throw ParseError(line_no, col(value.empty() ? clause : value),
                               op == '=' ? "expected '*' or '[...]'" : "expected '{...}'");
            }
            alt.tracks[track] = std::move(c);
          }
          alts.push_back(std::move(alt));
        }
      }
      if (bar == std::string_view::npos) break;
      rest = rest.substr(bar + 2);
    }
  }
  if (alts.empty()) throw ParseError(1, 1, "pattern has no alternatives");
  return GoalPattern(std::move(alts));
}

std::string format_pattern(const GoalPattern& g, const LabelTable& labels) {
  std::ostringstream out;
  for (const auto& alt : g.alternatives()) {
    for (std::size_t t = 0; t < alt.tracks.size(); ++t) {
      if (t > 0) out << "; ";
      out << (t == 0 ? std::string("H") : "S" + std::to_string(t));
      const auto& c = alt.tracks[t];
      const bool any_order = c.kind == TrackConstraint::Kind::AnyOrder;
      if (c.kind == TrackConstraint::Kind::Any) {
        out << " = *";
        continue;
      }
      out << (any_order ? " ~ {" : " = [");
      for (std::size_t i = 0; i < c.wagons.size(); ++i) {
        if (i > 0) out << ',';
        out << (labels.size() >= c.wagons[i] ? labels.name(c.wagons[i]) : std::to_string(c.wagons[i]));
      }
      out << (any_order ? '}' : ']');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace inglenook
