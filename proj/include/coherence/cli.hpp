#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coherence::cli {

/// Exit codes of coherence-decomp.
inline constexpr int kSuccess = 0;
inline constexpr int kInputError = 1;
inline constexpr int kPropertyFailure = 2;

/// Runs one command; args exclude the program name. Primary output goes to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal form used in every CSV cell.
std::string format_number(double x);

}  // namespace coherence::cli
