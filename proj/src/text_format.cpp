#include "inglenook/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace inglenook {

namespace {

bool is_number(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool is_token(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

// Parses a non-negative integer occupying all of `s`.
bool parse_int(std::string_view s, int& out) {
  if (!is_number(s)) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int column_of(std::string_view whole, std::string_view part) {
  return static_cast<int>(part.data() - whole.data()) + 1;
}

// Track name: H for the headshunt, S<i> for sidings.
bool parse_track_name(std::string_view s, int& track) {
  if (s == "H") {
    track = 0;
    return true;
  }
  if (s.size() >= 2 && s[0] == 'S' && parse_int(s.substr(1), track) && track >= 1) return true;
  return false;
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

LabelTable LabelTable::canonical(int w) {
  LabelTable t;
  for (int i = 1; i <= w; ++i) t.names_.push_back(std::to_string(i));
  return t;
}

LabelTable LabelTable::from_tokens(std::vector<std::string> tokens) {
  const bool numeric = std::all_of(tokens.begin(), tokens.end(),
                                   [](const std::string& s) { return is_number(s); });
  if (numeric) {
    std::sort(tokens.begin(), tokens.end(), [](const std::string& a, const std::string& b) {
      std::string_view x = a, y = b;
      while (x.size() > 1 && x.front() == '0') x.remove_prefix(1);
      while (y.size() > 1 && y.front() == '0') y.remove_prefix(1);
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
  } else {
    std::sort(tokens.begin(), tokens.end());
  }
  if (std::adjacent_find(tokens.begin(), tokens.end()) != tokens.end()) {
    throw ValidationError("duplicate wagon label");
  }
  if (tokens.size() > static_cast<std::size_t>(kMaxLabel)) {
    throw ValidationError("at most 255 wagon labels are supported");
  }
  LabelTable t;
  t.names_ = std::move(tokens);
  return t;
}

bool LabelTable::contains(std::string_view token) const {
  return std::find(names_.begin(), names_.end(), token) != names_.end();
}

Wagon LabelTable::label(std::string_view token) const {
  auto it = std::find(names_.begin(), names_.end(), token);
  if (it == names_.end()) throw std::out_of_range("unknown wagon label '" + std::string(token) + "'");
  return static_cast<Wagon>(it - names_.begin() + 1);
}

PuzzleSpec parse_spec(std::string_view text) {
  PuzzleSpec spec;
  bool have_w = false, have_h = false, have_s = false;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    std::string_view line = lines[n];
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, column_of(line, body), "expected 'key = value'");
    }
    const std::string_view key = trim(body.substr(0, eq));
    const std::string_view value = trim(body.substr(eq + 1));
    const int value_col = value.empty() ? column_of(line, body) + static_cast<int>(eq) + 1
                                        : column_of(line, value);
    std::vector<int> numbers;
    std::string_view rest = value;
    while (!rest.empty()) {
      std::size_t end = 0;
      while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
      std::string_view tok = rest.substr(0, end);
      int v = 0;
      if (!parse_int(tok, v)) {
        throw ParseError(line_no, column_of(line, tok),
                         "expected a non-negative integer, got '" + std::string(tok) + "'");
      }
      numbers.push_back(v);
      rest = trim(rest.substr(end));
    }
    if (numbers.empty()) throw ParseError(line_no, value_col, "missing value");
    auto single = [&](const char* what) {
      if (numbers.size() != 1) throw ParseError(line_no, value_col, std::string(what) + " takes one integer");
      return numbers.front();
    };
    if (key == "wagons") {
      spec.wagons = single("wagons");
      have_w = true;
    } else if (key == "headshunt") {
      spec.headshunt = single("headshunt");
      have_h = true;
    } else if (key == "sidings") {
      spec.sidings = numbers;
      have_s = true;
    } else {
      throw ParseError(line_no, column_of(line, key), "unknown key '" + std::string(key) + "'");
    }
  }
  const int last = static_cast<int>(lines.size()) + 1;
  if (!have_w) throw ParseError(last, 1, "missing 'wagons'");
  if (!have_h) throw ParseError(last, 1, "missing 'headshunt'");
  if (!have_s) throw ParseError(last, 1, "missing 'sidings'");
  try {
    spec.validate();
  } catch (const ValidationError& e) {
    throw ParseError(last, 1, e.what());
  }
  return spec;
}

std::string format_spec(const PuzzleSpec& spec) {
  std::ostringstream out;
  out << "wagons = " << spec.wagons << "\nheadshunt = " << spec.headshunt << "\nsidings =";
  for (int m : spec.sidings) out << ' ' << m;
  out << '\n';
  return out.str();
}

std::vector<std::vector<std::string>> parse_position_tokens(std::string_view line) {
  std::string_view text = trim(line);
  std::vector<std::vector<std::string>> tracks;
  std::vector<bool> seen;
  std::size_t at = 0;
  auto fail = [&](std::size_t where, const std::string& msg) -> ParseError {
    return ParseError(1, column_of(line, text) + static_cast<int>(where), msg);
  };
  if (text.empty()) throw fail(0, "empty position");
  while (true) {
    const auto colon = text.find(':', at);
    if (colon == std::string_view::npos) throw fail(at, "expected 'H:' or 'S<i>:'");
    int track = 0;
    if (!parse_track_name(trim(text.substr(at, colon - at)), track)) {
      throw fail(at, "bad track name '" + std::string(text.substr(at, colon - at)) + "'");
    }
    if (track != static_cast<int>(tracks.size())) {
      throw fail(at, track == 0 ? "headshunt must come first"
                                : "expected track S" + std::to_string(tracks.size()));
    }
    std::size_t open = colon + 1;
    while (open < text.size() && std::isspace(static_cast<unsigned char>(text[open]))) ++open;
    if (open >= text.size() || text[open] != '[') throw fail(open, "expected '['");
    const auto close = text.find(']', open);
    if (close == std::string_view::npos) throw fail(open, "missing ']'");
    std::vector<std::string> wagons;
    std::string_view inner = trim(text.substr(open + 1, close - open - 1));
    if (!inner.empty()) {
      std::size_t pos = 0;
      while (true) {
        const auto comma = inner.find(',', pos);
        std::string_view tok = trim(inner.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (!is_token(tok)) {
          throw fail(static_cast<std::size_t>(inner.data() - text.data()) + pos,
                     "bad wagon token '" + std::string(tok) + "'");
        }
        wagons.emplace_back(tok);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
    tracks.push_back(std::move(wagons));
    std::size_t next = close + 1;
    while (next < text.size() && std::isspace(static_cast<unsigned char>(text[next]))) ++next;
    if (next == text.size()) break;
    if (text[next] != '|') throw fail(next, "expected '|' between tracks");
    at = next + 1;
  }
  return tracks;
}

Position parse_position(const PuzzleSpec& spec, std::string_view line, LabelTable& labels) {
  auto tokens = parse_position_tokens(line);
  if (static_cast<int>(tokens.size()) != spec.track_count()) {
    throw ParseError(1, 1, "position has " + std::to_string(tokens.size()) + " tracks, spec has " +
                               std::to_string(spec.track_count()));
  }
  if (labels.size() == 0) {
    std::vector<std::string> all;
    for (const auto& t : tokens) all.insert(all.end(), t.begin(), t.end());
    if (static_cast<int>(all.size()) != spec.wagons) {
      throw ParseError(1, 1, "position holds " + std::to_string(all.size()) + " wagons, spec has " +
                                 std::to_string(spec.wagons));
    }
    try {
      labels = LabelTable::from_tokens(all);
    } catch (const ValidationError& e) {
      throw ParseError(1, 1, e.what());
    }
  }
  Position p;
  p.tracks.resize(tokens.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    for (const auto& tok : tokens[t]) {
      if (!labels.contains(tok)) throw ParseError(1, 1, "unknown wagon label '" + tok + "'");
      p.tracks[t].push_back(labels.label(tok));
    }
  }
  try {
    validate(spec, p);
  } catch (const ValidationError& e) {
    throw ParseError(1, 1, e.what());
  }
  return p;
}

std::string format_position(const Position& p, const LabelTable& labels) {
  std::string out;
  for (std::size_t t = 0; t < p.tracks.size(); ++t) {
    if (t > 0) out += '|';
    out += t == 0 ? std::string("H") : "S" + std::to_string(t);
    out += ":[";
    for (std::size_t i = 0; i < p.tracks[t].size(); ++i) {
      if (i > 0) out += ',';
      const Wagon x = p.tracks[t][i];
      out += labels.size() >= x ? labels.name(x) : std::to_string(x);
    }
    out += ']';
  }
  return out;
}

std::string format_position(const Position& p) { return format_position(p, LabelTable{}); }

ShuntMove parse_move(std::string_view line) {
  std::istringstream in{std::string(trim(line))};
  std::string verb, count, siding, extra;
  in >> verb >> count >> siding;
  ShuntMove mv;
  if (verb == "PULL") {
    mv.direction = Direction::Pull;
  } else if (verb == "PUSH") {
    mv.direction = Direction::Push;
  } else {
    throw ParseError(1, 1, "expected PULL or PUSH, got '" + verb + "'");
  }
  if (!parse_int(count, mv.count) || mv.count < 1) {
    throw ParseError(1, static_cast<int>(verb.size()) + 2, "bad wagon count '" + count + "'");
  }
  int track = 0;
  if (!parse_track_name(siding, track) || track == 0) {
    throw ParseError(1, static_cast<int>(verb.size() + count.size()) + 3,
                     "bad siding '" + siding + "'");
  }
  if (in >> extra) throw ParseError(1, 1, "trailing text '" + extra + "'");
  mv.siding = track;
  return mv;
}

std::string format_move(const ShuntMove& mv) {
  return std::string(mv.direction == Direction::Pull ? "PULL " : "PUSH ") +
         std::to_string(mv.count) + " S" + std::to_string(mv.siding);
}

CardMove parse_card_move(std::string_view line) {
  std::istringstream in{std::string(trim(line))};
  std::string verb, from, arrow, to, extra;
  in >> verb >> from >> arrow >> to;
  CardMove mv;
  if (verb != "CARD" || arrow != "->" || !parse_int(from, mv.from) || !parse_int(to, mv.to) ||
      (in >> extra)) {
    throw ParseError(1, 1, "expected 'CARD <from> -> <to>'");
  }
  return mv;
}

std::string format_card_move(const CardMove& mv) {
  return "CARD " + std::to_string(mv.from) + " -> " + std::to_string(mv.to);
}

bool looks_like_position(std::string_view line) {
  line = trim(line);
  return line.size() >= 2 && line[0] == 'H' && trim(line.substr(1)).starts_with(':');
}

}  // namespace inglenook
