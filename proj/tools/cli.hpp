#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrpower::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kSuiteFailed = 1,
  kBadInput = 2,        ///< bad flags or unparsable file
  kInvalidChannel = 3,  ///< well-formed file violating a channel/POVM invariant
  kInconsistent = 4,    ///< conversion certificate gap above 1e-9
};

/// Runs `mrpower <args...>` writing to the given streams; args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrpower::cli
