#pragma once
/**
 * @brief The detpol command line as a callable function.
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace detpol {

inline constexpr const char* kReportSchema = "detpol.report/1";

enum ExitCode { kExitTrue = 0, kExitFalse = 1, kExitError = 2, kExitUnknown = 3 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace detpol
