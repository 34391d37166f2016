#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <rrsp/error.hpp>

namespace rrsp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kUnsupported = 3,
  kCapacity = 4,
  kIo = 5,
};

int exit_code(ErrorKind kind) noexcept;

/// Runs one command line. Results go to `out`, diagnostics and timings to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rrsp::cli
