#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmseq::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 2;
inline constexpr int kNumericalError = 3;

// Parses argv and runs one subcommand. Never throws.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cmseq::cli
