#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairrank::cli {

enum ExitCode : int {
  kOk = 0,
  kFailVerdict = 1,
  kInputError = 2,
  kIoError = 3,
  kVerificationFailure = 4,
};

// Runs one invocation. args[0] is the program name. `in` backs "-" paths.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace fairrank::cli
