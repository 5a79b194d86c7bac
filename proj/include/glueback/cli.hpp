#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glueback::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;

/// Version of the --json output layout.
inline constexpr const char* kJsonSchema = "glueback-report-1";

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace glueback::cli
