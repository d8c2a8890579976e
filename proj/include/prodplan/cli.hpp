#ifndef PRODPLAN_CLI_HPP
#define PRODPLAN_CLI_HPP

#include <iosfwd>

namespace prodplan {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Subcommands: solve, simulate, sensitivity --scenario s1|s2|s3, compare.
/// Returns 0 on success, 1 on non-convergence or (strict mode) a failed
/// bound/dominance check, 2 on usage or configuration errors.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace prodplan

#endif
