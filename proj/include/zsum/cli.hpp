#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zsum {

enum ExitCode : int {
  exit_ok = 0,
  exit_error = 1,
  exit_budget = 2,
  exit_invalid = 3,
  exit_counterexample = 4,
};

// args excludes the program name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zsum
