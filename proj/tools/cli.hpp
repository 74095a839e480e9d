#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppc::cli {

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kConfig = 2,
  kParse = 3,
  kDomain = 4,
  kFit = 5,
};

/// Runs one invocation. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppc::cli
