#ifndef KZB_CLI_HPP
#define KZB_CLI_HPP

#include <iosfwd>

namespace kzb
{

  enum ExitCode
  {
    ExitPass = 0,
    ExitCheckFailure = 1,
    ExitUsage = 2
  };

  /// Entry point of the kzb tool: subcommands describe, check and potential.
  /// Reports go to --out when given, otherwise to out; diagnostics go to err.
  int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

} // namespace kzb

#endif
