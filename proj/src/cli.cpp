#include "inglenook/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "inglenook/constructive.hpp"
#include "inglenook/feasibility.hpp"
#include "inglenook/pattern.hpp"
#include "inglenook/search.hpp"
#include "inglenook/text_format.hpp"

namespace inglenook {

namespace {

// Raised for input problems that are not parse errors (missing flags, files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Negative outcome with its own message (exit 1).
class Negative : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string spec;
  std::optional<int> wagons;
  std::optional<int> headshunt;
  std::vector<int> sidings;
  std::string start;
  std::string goal;
  std::string moves;
  std::string piles;
  std::optional<int> reversal;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  std::string format = "text";
  bool exact_starts = false;
  bool census = false;
  bool reach = false;
};

// A flag value naming a regular file is read from it; anything else is inline text.
std::string load(const std::string& source, const char* what) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw InputError(std::string("cannot read ") + what + " file '" + source + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return source;
}

bool blank_or_comment(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

PuzzleSpec read_spec(const Options& o) {
  if (!o.spec.empty()) {
    std::string text = load(o.spec, "spec");
    if (text.find('\n') == std::string::npos) {
      for (char& c : text) {
        if (c == ';') c = '\n';
      }
    }
    return parse_spec(text);
  }
  if (!o.wagons || !o.headshunt || o.sidings.empty()) {
    throw InputError("give --spec or all of --wagons, --headshunt, --sidings");
  }
  PuzzleSpec spec{*o.wagons, *o.headshunt, o.sidings};
  spec.validate();
  return spec;
}

// First position line of a start source.
Position read_position(const PuzzleSpec& spec, const std::string& source, LabelTable& labels,
                       const char* what) {
  const auto lines = split_lines(load(source, what));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    try {
      return parse_position(spec, trim(lines[i]), labels);
    } catch (const ParseError& e) {
      throw ParseError(static_cast<int>(i + 1), e.column(), e.message());
    }
  }
  throw InputError(std::string("no position in ") + what);
}

GoalPattern read_pattern(const PuzzleSpec& spec, const std::string& source, const LabelTable& labels,
                         const char* what) {
  return parse_pattern(spec, load(source, what), labels);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(std::string("missing ") + flag);
}

void print_trace(std::ostream& out, const ShuntTrace& t, const LabelTable& labels) {
  out << format_position(t.start, labels) << '\n';
  for (const ShuntMove& m : t.moves) out << format_move(m) << '\n';
  out << format_position(t.finish, labels) << '\n';
}

int cmd_check(const Options& o, std::ostream& out) {
  const PuzzleSpec spec = read_spec(o);
  const FeasibilityVerdict v = inglenook_solvable(spec);
  out << (v.solvable ? "solvable" : "unsolvable") << ", slack " << v.slack << '\n';
  out << "branch = " << branch_name(v.branch) << '\n';
  out << "max_wagons = " << max_wagons(spec.headshunt, spec.sidings) << '\n';
  return v.solvable ? kExitOk : kExitNegative;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const PuzzleSpec spec = read_spec(o);
  require(o.start, "--start");
  require(o.goal, "--goal");
  LabelTable labels;
  const Position start = read_position(spec, o.start, labels, "start");
  const GoalPattern goal = read_pattern(spec, o.goal, labels, "goal");
  const ShuntTrace t = solve_to_pattern(spec, start, goal);
  out << "bound = " << shunt_move_bound(spec.wagons) << '\n';
  out << "length = " << t.length() << '\n';
  print_trace(out, t, labels);
  return kExitOk;
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.budget = o.budget;
  s.threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
  return s;
}

int cmd_optimal(const Options& o, std::ostream& out) {
  const PuzzleSpec spec = read_spec(o);
  require(o.start, "--start");
  require(o.goal, "--goal");
  LabelTable labels;
  const Position start = read_position(spec, o.start, labels, "start");
  const GoalPattern goal = read_pattern(spec, o.goal, labels, "goal");
  const SearchReport r = optimal_solve(spec, start, goal, search_options(o));
  if (!r.distance) {
    out << "distance = unreachable\nexplored = " << r.explored << '\n';
    return kExitNegative;
  }
  out << "distance = " << *r.distance << "\nexplored = " << r.explored << '\n';
  print_trace(out, r.trace, labels);
  return kExitOk;
}

int cmd_worst(const Options& o, std::ostream& out) {
  const PuzzleSpec spec = read_spec(o);
  require(o.goal, "--goal");
  const LabelTable labels = LabelTable::canonical(spec.wagons);
  const GoalPattern starts =
      o.start.empty() ? GoalPattern::any(spec) : read_pattern(spec, o.start, labels, "start pattern");
  const GoalPattern goal = read_pattern(spec, o.goal, labels, "goal");
  const WorstCase w = worst_case_moves(spec, starts, goal, search_options(o), !o.exact_starts);
  out << "max_distance = " << w.max_distance << '\n';
  out << "witness = " << format_position(w.witness, labels) << '\n';
  out << "starts = " << w.starts << '\n';
  out << "unreachable = " << w.unreachable << '\n';
  out << "explored = " << w.explored << '\n';
  return w.unreachable == 0 ? kExitOk : kExitNegative;
}

void print_census(std::ostream& out, const Census& c) {
  out << "states = " << c.states << "\ncomponents = " << c.components() << "\nsizes =";
  for (auto s : c.sizes) out << ' ' << s;
  out << '\n';
}

int cmd_diameter(const Options& o, std::ostream& out) {
  const SearchOptions so = search_options(o);
  if (o.reversal) {
    const ReversalReport r = reversal_distance(*o.reversal, so);
    out << "wagons = " << *o.reversal << '\n';
    out << "distance = " << r.distance << '\n';
    out << "cards_distance = " << r.cards_distance << '\n';
    out << "lower_bound = " << static_cast<long>(*o.reversal) * *o.reversal / 2 << '\n';
    out << "correspondence = " << (r.correspondence_holds ? "holds" : "broken") << '\n';
    out << "from = " << format_position(r.from) << '\n';
    out << "to = " << format_position(r.to) << '\n';
    return kExitOk;
  }
  if (!o.piles.empty()) {
    if (!o.wagons) throw InputError("--piles needs --wagons");
    CardsSpec cards{*o.wagons, {}};
    std::istringstream in(o.piles);
    int m = 0;
    while (in >> m) cards.capacities.push_back(m);
    if (!in.eof()) throw InputError("--piles must be a list of integers");
    cards.validate();
    const Census c = cards_component_census(cards, so);
    if (o.census) {
      print_census(out, c);
      return kExitOk;
    }
    if (c.components() != 1) {
      print_census(out, c);
      throw Negative("graph is disconnected, no finite diameter");
    }
    out << "states = " << c.states << "\ndiameter = " << cards_diameter(cards, so) << '\n';
    return kExitOk;
  }
  const PuzzleSpec spec = read_spec(o);
  if (o.reach) {
    LabelTable labels;
    const Position from = o.start.empty() ? GoalPattern::any(spec).least_match(spec)
                                          : read_position(spec, o.start, labels, "start");
    const Reach r = inglenook_reach(spec, from, so);
    out << "states = " << r.states << "\nreached = " << r.reached
        << "\neccentricity = " << r.eccentricity
        << "\nconnected = " << (r.connected() ? "yes" : "no") << '\n';
    return r.connected() ? kExitOk : kExitNegative;
  }
  const Census c = inglenook_component_census(spec, so);
  if (o.census) {
    print_census(out, c);
    return kExitOk;
  }
  if (c.components() != 1) {
    print_census(out, c);
    throw Negative("graph is disconnected, no finite diameter");
  }
  out << "states = " << c.states << "\ndiameter = " << inglenook_diameter(spec, so) << '\n';
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const PuzzleSpec spec = read_spec(o);
  const LabelTable labels = LabelTable::canonical(spec.wagons);
  const GoalPattern pattern =
      o.start.empty() ? GoalPattern::any(spec) : read_pattern(spec, o.start, labels, "start pattern");
  std::mt19937_64 rng(o.seed);
  out << format_position(pattern.sample(spec, rng), labels) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const PuzzleSpec spec = read_spec(o);
  require(o.moves, "--moves");
  LabelTable labels;
  std::optional<Position> start;
  if (!o.start.empty()) start = read_position(spec, o.start, labels, "start");

  const auto lines = split_lines(load(o.moves, "moves"));
  std::optional<Position> current = start;
  std::optional<Position> expected_finish;
  int expected_line = 0;
  bool seen_move = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    const std::string_view line = trim(lines[i]);
    if (blank_or_comment(line)) continue;
    if (looks_like_position(line)) {
      Position p;
      try {
        p = parse_position(spec, line, labels);
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.column(), e.message());
      } catch (const ValidationError& e) {
        throw ParseError(line_no, 1, e.what());
      }
      if (!seen_move && !current) {
        current = p;
      } else if (!seen_move && *current != p && !expected_finish) {
        throw Negative("line " + std::to_string(line_no) + ": start position differs from --start");
      } else if (seen_move) {
        expected_finish = p;
        expected_line = line_no;
      }
      continue;
    }
    if (expected_finish) throw ParseError(line_no, 1, "move after the finish position");
    ShuntMove mv;
    try {
      mv = parse_move(line);
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.column(), e.message());
    }
    if (!current) throw InputError("no start position: give --start or a position line first");
    try {
      current = apply_move(spec, *current, mv);
    } catch (const IllegalMove& e) {
      throw Negative("line " + std::to_string(line_no) + ": " + format_move(mv) + ": " + e.what());
    }
    seen_move = true;
  }
  if (!current) throw InputError("no start position: give --start or a position line first");
  out << format_position(*current, labels) << '\n';
  if (expected_finish && *expected_finish != *current) {
    throw Negative("line " + std::to_string(expected_line) + ": finish position differs from the replay");
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inglenook shunting puzzle toolkit", "inglenook"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--spec", o.spec, "spec file, or inline 'wagons = 8; headshunt = 3; sidings = 3 3 5'");
  app.add_option("--wagons", o.wagons, "wagon (or card) count");
  app.add_option("--headshunt", o.headshunt, "headshunt capacity h");
  app.add_option("--sidings", o.sidings, "siding capacities")->delimiter(',')->expected(1, -1);
  app.add_option("--start", o.start, "start position (or start pattern for worst/gen), file or inline");
  app.add_option("--goal", o.goal, "goal pattern, file or inline");
  app.add_option("--moves", o.moves, "move list file or inline");
  app.add_option("--seed", o.seed, "seed for gen (mt19937_64)");
  app.add_option("--budget", o.budget, "state budget for searches")->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "search threads (0 = all cores)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text"}));

  auto* check = app.add_subcommand("check", "decide solvability");
  auto* solve = app.add_subcommand("solve", "constructive solution within the move bound");
  auto* optimal = app.add_subcommand("optimal", "shortest solution by breadth-first search");
  auto* worst = app.add_subcommand("worst", "largest optimal distance over matching starts");
  worst->add_flag("--exact-starts", o.exact_starts, "do not close the start pattern under renaming");
  auto* diameter = app.add_subcommand("diameter", "exact graph diameter or census");
  diameter->add_option("--piles", o.piles, "cards-in-piles capacities, e.g. \"3 3 1\"");
  diameter->add_option("--reversal", o.reversal, "reversal distance for w wagons");
  diameter->add_flag("--census", o.census, "print connected components instead");
  diameter->add_flag("--reach", o.reach, "component size of --start (default: least position), low memory");
  auto* gen = app.add_subcommand("gen", "uniform random position matching --start");
  auto* verify = app.add_subcommand("verify", "replay a move list");

  std::vector<const char*> argv{"inglenook"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (optimal->parsed()) return cmd_optimal(o, out);
    if (worst->parsed()) return cmd_worst(o, out);
    if (diameter->parsed()) return cmd_diameter(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const Negative& e) {
    err << "error: " << e.what() << '\n';
    return kExitNegative;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitNegative;
  } catch (const ResourceRefusal& e) {
    err << e.what() << '\n';
    return kExitRefused;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const UnsatisfiablePattern& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IllegalMove& e) {
    err << "error: " << e.what() << '\n';
    return kExitNegative;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::length_error& e) {
    err << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace inglenook
