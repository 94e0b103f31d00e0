#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mga {

enum ExitCode : int {
  kExitOk = 0,
  kExitFindings = 1,  // verify found violations or duplicates
  kExitUsage = 2,     // bad arguments or I/O failure
  kExitSyntax = 3,
  kExitUnsat = 10,
  kExitUnsupported = 11,
  kExitSolver = 12,
  kExitSoundness = 13,
  kExitInternal = 70,
};

// args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mga
