#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hsync/error.hpp"

namespace hsync::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNumericError = 3,
  kHypothesesNotMet = 4,
  kUsage = 64,
};

int exit_code_for(ErrorKind kind);

/// "fnv1a64:<16 hex digits>" of the bytes.
std::string content_hash(std::string_view bytes);

/// args excludes the program name. The primary report goes to `out`,
/// diagnostics for humans to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsync::cli
