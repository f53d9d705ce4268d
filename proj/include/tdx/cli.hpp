#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdx {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,         // usage, parse, validation or I/O error
  kExitNoSolution = 2,    // chase failure or no solution for certain answers
  kExitNotEquivalent = 3  // equiv found no homomorphism in some direction
};

/// Runs one command. `args` excludes the program name. The path "-" reads
/// from `in` or writes to `out`; diagnostics go to `err`, coloured unless
/// TDX_COLOR=0.
///
///   normalize -i A -o B
///   chase   -m M -i SRC -o TGT
///   achase  -m M -i ASRC -o ATGT
///   sem     -i C [--horizon H] -o A
///   query   -m M -i INST -q NAME -o ANS
///   certain -m M -i SRC -q NAME -o ANS
///   equiv   -a X -b Y [--horizon H]
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tdx
