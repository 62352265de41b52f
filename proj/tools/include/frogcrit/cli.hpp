#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace frogcrit::cli {

enum class OutputFormat { PlainTable, CSV, JSONLines };

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitBracket = 3;

/// Parses "2..10,15,20" into {2, ..., 10, 15, 20}. Throws std::invalid_argument
/// on malformed or empty input.
std::vector<int> parse_d_list(const std::string &text);

/// Runs the command line (without the program name). Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace frogcrit::cli
