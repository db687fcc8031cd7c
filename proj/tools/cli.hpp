#pragma once

// Command-line driver: parses arguments, reads input documents, runs one
// command and writes a report document.

#include <iosfwd>
#include <string>
#include <vector>

namespace rht::cli {

/// Exit statuses: success, input error, negative mathematical verdict.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kNegative = 2;

/// args excludes the program name. The report goes to `out` unless
/// --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rht::cli
