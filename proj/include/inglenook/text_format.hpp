#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inglenook/model.hpp"

namespace inglenook {

// Input error with a 1-based line/column location.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

// Maps user tokens to canonical labels 1..w. Tokens are ordered numerically
// when every token is a decimal integer, lexicographically otherwise.
class LabelTable {
 public:
  LabelTable() = default;

  static LabelTable canonical(int w);
  static LabelTable from_tokens(std::vector<std::string> tokens);

  int size() const { return static_cast<int>(names_.size()); }
  // Throws std::out_of_range for tokens not in the table.
  Wagon label(std::string_view token) const;
  bool contains(std::string_view token) const;
  const std::string& name(Wagon label) const { return names_.at(label - 1); }

 private:
  std::vector<std::string> names_;
};

PuzzleSpec parse_spec(std::string_view text);
std::string format_spec(const PuzzleSpec& spec);

// `H:[1,6]|S1:[]|S2:[4,7,8]|S3:[2,3,5]`
std::vector<std::vector<std::string>> parse_position_tokens(std::string_view line);
// When `labels` is empty it is filled from the tokens of this position.
Position parse_position(const PuzzleSpec& spec, std::string_view line, LabelTable& labels);
std::string format_position(const Position& p, const LabelTable& labels);
std::string format_position(const Position& p);

// `PULL <k> S<r>` / `PUSH <k> S<r>`
ShuntMove parse_move(std::string_view line);
std::string format_move(const ShuntMove& mv);
// `CARD <from> -> <to>`
CardMove parse_card_move(std::string_view line);
std::string format_card_move(const CardMove& mv);

bool looks_like_position(std::string_view line);

// Splits into lines, dropping trailing '\r'.
std::vector<std::string> split_lines(std::string_view text);
std::string_view trim(std::string_view s);

}  // namespace inglenook
