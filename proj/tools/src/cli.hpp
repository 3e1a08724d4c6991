#pragma once

// The biherm command line as a library, so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace biherm::cli {

enum ExitCode : int {
  kPass = 0,
  kParse = 1,
  kRefused = 2,   // classification refusal
  kAnalytic = 3,  // positivity / plurisubharmonicity
  kNumerical = 4, // integrator, root finder, or a failed certificate
};

/// args excludes the program name. Documents go to --out or `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biherm::cli
