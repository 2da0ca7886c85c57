#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace inglenook {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // unsolvable, unreachable, illegal move, finish mismatch
  kExitInput = 2,     // malformed or inconsistent input
  kExitRefused = 3,   // over the search budget
  kExitInternal = 4,
};

// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inglenook
