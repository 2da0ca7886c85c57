#include "inglenook/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace inglenook {

namespace {

std::string track_name(int track) {
  return track == 0 ? std::string("headshunt") : "siding " + std::to_string(track);
}

// Partition of labels 1..w over the given tracks, each within capacity.
void check_partition(const std::vector<Track>& tracks, const std::vector<int>& caps, int w,
                     const char* what_track) {
  if (tracks.size() != caps.size()) {
    throw ValidationError("expected " + std::to_string(caps.size()) + " " + what_track +
                          "s, got " + std::to_string(tracks.size()));
  }
  std::vector<bool> seen(static_cast<std::size_t>(w) + 1, false);
  int total = 0;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (static_cast<int>(tracks[i].size()) > caps[i]) {
      throw ValidationError(std::string(what_track) + " " + std::to_string(i) + " holds " +
                            std::to_string(tracks[i].size()) + " but its capacity is " +
                            std::to_string(caps[i]));
    }
    for (Wagon x : tracks[i]) {
      if (x < 1 || x > w) {
        throw ValidationError("label " + std::to_string(x) + " outside 1.." + std::to_string(w));
      }
      if (seen[x]) throw ValidationError("label " + std::to_string(x) + " appears twice");
      seen[x] = true;
      ++total;
    }
  }
  if (total != w) {
    throw ValidationError("expected " + std::to_string(w) + " labels, found " +
                          std::to_string(total));
  }
}

std::vector<int> track_capacities(const PuzzleSpec& spec) {
  std::vector<int> caps;
  caps.reserve(spec.sidings.size() + 1);
  caps.push_back(spec.headshunt);
  caps.insert(caps.end(), spec.sidings.begin(), spec.sidings.end());
  return caps;
}

}  // namespace

int PuzzleSpec::total_capacity() const {
  return std::accumulate(sidings.begin(), sidings.end(), headshunt);
}

void PuzzleSpec::validate() const {
  if (wagons < 1) throw ValidationError("wagon count must be positive");
  if (wagons > kMaxLabel) throw ValidationError("at most 255 wagons are supported");
  if (headshunt < 1) throw ValidationError("headshunt capacity must be positive");
  if (sidings.empty()) throw ValidationError("at least one siding is required");
  for (std::size_t i = 0; i < sidings.size(); ++i) {
    if (sidings[i] < 1) {
      throw ValidationError("siding " + std::to_string(i + 1) + " capacity must be positive");
    }
  }
  if (headshunt > kMaxLabel ||
      std::any_of(sidings.begin(), sidings.end(), [](int m) { return m > kMaxLabel; })) {
    throw ValidationError("track capacities above 255 are not supported");
  }
  if (wagons >= total_capacity()) {
    throw ValidationError("wagon count " + std::to_string(wagons) +
                          " must be below total capacity " + std::to_string(total_capacity()));
  }
}

int CardsSpec::total_capacity() const {
  return std::accumulate(capacities.begin(), capacities.end(), 0);
}

void CardsSpec::validate() const {
  if (cards < 1) throw ValidationError("card count must be positive");
  if (cards > kMaxLabel) throw ValidationError("at most 255 cards are supported");
  if (capacities.empty()) throw ValidationError("at least one pile is required");
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    if (capacities[i] < 1 || capacities[i] > kMaxLabel) {
      throw ValidationError("pile " + std::to_string(i) + " capacity must be in 1..255");
    }
  }
  if (cards > total_capacity()) {
    throw ValidationError("card count " + std::to_string(cards) + " exceeds total capacity " +
                          std::to_string(total_capacity()));
  }
}

void validate(const PuzzleSpec& spec, const Position& p) {
  check_partition(p.tracks, track_capacities(spec), spec.wagons, "track");
}

void validate(const CardsSpec& spec, const CardsState& c) {
  check_partition(c.piles, spec.capacities, spec.cards, "pile");
}

std::vector<ShuntMove> legal_moves(const PuzzleSpec& spec, const Position& p) {
  validate(spec, p);
  std::vector<ShuntMove> out;
  const int in_head = static_cast<int>(p.headshunt().size());
  const int head_free = spec.headshunt - in_head;
  for (int r = 1; r <= spec.siding_count(); ++r) {
    const int in_siding = static_cast<int>(p.tracks[r].size());
    const int max_pull = std::min(head_free, in_siding);
    for (int k = 1; k <= max_pull; ++k) out.push_back({r, Direction::Pull, k});
    const int max_push = std::min(in_head, spec.sidings[r - 1] - in_siding);
    for (int k = 1; k <= max_push; ++k) out.push_back({r, Direction::Push, k});
  }
  return out;
}

Position apply_move(const PuzzleSpec& spec, const Position& p, const ShuntMove& mv) {
  validate(spec, p);
  if (mv.siding < 1 || mv.siding > spec.siding_count()) {
    throw IllegalMove("no siding " + std::to_string(mv.siding));
  }
  if (mv.count < 1) throw IllegalMove("a move transfers at least one wagon");
  Position q = p;
  Track& head = q.tracks[0];
  Track& side = q.tracks[mv.siding];
  const int k = mv.count;
  if (mv.direction == Direction::Pull) {
    if (k > static_cast<int>(side.size())) {
      throw IllegalMove("cannot pull " + std::to_string(k) + " from " + track_name(mv.siding) +
                        " holding " + std::to_string(side.size()));
    }
    if (static_cast<int>(head.size()) + k > spec.headshunt) {
      throw IllegalMove("pulling " + std::to_string(k) + " from " + track_name(mv.siding) +
                        " overfills the headshunt (capacity " + std::to_string(spec.headshunt) +
                        ")");
    }
    head.insert(head.end(), side.begin(), side.begin() + k);
    side.erase(side.begin(), side.begin() + k);
  } else {
    if (k > static_cast<int>(head.size())) {
      throw IllegalMove("cannot push " + std::to_string(k) + " from a headshunt holding " +
                        std::to_string(head.size()));
    }
    if (static_cast<int>(side.size()) + k > spec.sidings[mv.siding - 1]) {
      throw IllegalMove("pushing " + std::to_string(k) + " overfills " + track_name(mv.siding) +
                        " (capacity " + std::to_string(spec.sidings[mv.siding - 1]) + ")");
    }
    side.insert(side.begin(), head.end() - k, head.end());
    head.erase(head.end() - k, head.end());
  }
  return q;
}

std::vector<CardMove> legal_card_moves(const CardsSpec& spec, const CardsState& c) {
  validate(spec, c);
  std::vector<CardMove> out;
  for (int i = 0; i < spec.pile_count(); ++i) {
    if (c.piles[i].empty()) continue;
    for (int j = 0; j < spec.pile_count(); ++j) {
      if (j != i && static_cast<int>(c.piles[j].size()) < spec.capacities[j]) {
        out.push_back({i, j});
      }
    }
  }
  return out;
}

CardsState apply_card_move(const CardsSpec& spec, const CardsState& c, const CardMove& mv) {
  validate(spec, c);
  const int n = spec.pile_count();
  if (mv.from < 0 || mv.from >= n || mv.to < 0 || mv.to >= n || mv.from == mv.to) {
    throw IllegalMove("bad pile pair " + std::to_string(mv.from) + " -> " + std::to_string(mv.to));
  }
  if (c.piles[mv.from].empty()) {
    throw IllegalMove("pile " + std::to_string(mv.from) + " is empty");
  }
  if (static_cast<int>(c.piles[mv.to].size()) >= spec.capacities[mv.to]) {
    throw IllegalMove("pile " + std::to_string(mv.to) + " is full");
  }
  CardsState d = c;
  d.piles[mv.to].push_back(d.piles[mv.from].back());
  d.piles[mv.from].pop_back();
  return d;
}

bool is_convertible(const PuzzleSpec& spec, const Position& p) {
  return static_cast<int>(p.headshunt().size()) <= spec.headshunt - 1;
}

CardsSpec cards_spec_for(const PuzzleSpec& spec) {
  CardsSpec c;
  c.cards = spec.wagons;
  if (spec.headshunt > 1) c.capacities.push_back(spec.headshunt - 1);
  c.capacities.insert(c.capacities.end(), spec.sidings.begin(), spec.sidings.end());
  return c;
}

int pile_of_track(const PuzzleSpec& spec, int track) {
  if (spec.headshunt > 1) return track;
  return track == 0 ? -1 : track - 1;
}

int track_of_pile(const PuzzleSpec& spec, int pile) {
  return spec.headshunt > 1 ? pile : pile + 1;
}

CardsState to_cards(const PuzzleSpec& spec, const Position& p) {
  validate(spec, p);
  if (!is_convertible(spec, p)) {
    throw ValidationError("position is not convertible: the headshunt is full");
  }
  CardsState c;
  for (int t = 0; t < spec.track_count(); ++t) {
    if (pile_of_track(spec, t) < 0) continue;
    Track pile = p.tracks[t];
    // Headshunt: engine end at the bottom, which is already its reading order.
    // Sidings: buffer stop at the bottom.
    if (t > 0) std::reverse(pile.begin(), pile.end());
    c.piles.push_back(std::move(pile));
  }
  return c;
}

Position from_cards(const PuzzleSpec& spec, const CardsState& c) {
  const CardsSpec cs = cards_spec_for(spec);
  validate(cs, c);
  Position p;
  p.tracks.resize(spec.track_count());
  for (int i = 0; i < cs.pile_count(); ++i) {
    const int t = track_of_pile(spec, i);
    Track track = c.piles[i];
    if (t > 0) std::reverse(track.begin(), track.end());
    p.tracks[t] = std::move(track);
  }
  return p;
}

std::size_t encoding_width(const PuzzleSpec& spec) {
  return static_cast<std::size_t>(spec.track_count() + spec.wagons);
}

std::string canonical_encoding(const PuzzleSpec& spec, const Position& p) {
  validate(spec, p);
  std::string out;
  out.reserve(encoding_width(spec));
  for (const Track& t : p.tracks) out.push_back(static_cast<char>(t.size()));
  for (const Track& t : p.tracks) {
    for (Wagon x : t) out.push_back(static_cast<char>(x));
  }
  return out;
}

Position decode_position(const PuzzleSpec& spec, std::string_view bytes) {
  if (bytes.size() != encoding_width(spec)) {
    throw ValidationError("encoding has width " + std::to_string(bytes.size()) + ", expected " +
                          std::to_string(encoding_width(spec)));
  }
  const int tracks = spec.track_count();
  Position p;
  p.tracks.resize(tracks);
  std::size_t at = static_cast<std::size_t>(tracks);
  for (int t = 0; t < tracks; ++t) {
    const auto len = static_cast<unsigned char>(bytes[t]);
    if (at + len > bytes.size()) throw ValidationError("encoding lengths exceed its width");
    for (unsigned i = 0; i < len; ++i) p.tracks[t].push_back(static_cast<Wagon>(bytes[at + i]));
    at += len;
  }
  if (at != bytes.size()) throw ValidationError("encoding lengths do not cover every wagon");
  validate(spec, p);
  return p;
}

}  // namespace inglenook
