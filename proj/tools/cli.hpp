#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mltoric::cli {

enum ExitCode : int {
  ok = 0,
  check_failed = 1,
  invalid_input = 2,
  unsupported_monoid = 3,
  inconclusive = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mltoric::cli
