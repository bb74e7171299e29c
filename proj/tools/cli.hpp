#pragma once

// Command-line driver for the `pbf` tool, kept out of main() so the tests
// can run it in-process against string streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace pbf::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInvalidMethod = 3,
  kBicNeedsN = 4,
  kAlphaNeedsAnalytic = 5,
  kDomain = 6,
  kIo = 7,
};

/// args excludes the program name. Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbf::cli
