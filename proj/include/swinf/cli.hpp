#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swinf {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInputError = 2,
  kExitDegenerate = 3,
};

/// Entry point of the `swinf` tool. args[0] is the program name. Reports go
/// to `out` unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swinf
