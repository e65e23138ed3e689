#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace longmem::cli {

enum ExitCode : int { kOk = 0, kNumericFailure = 1, kUsage = 2 };

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. CSV/JSON results go to `--out` or, if absent, to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace longmem::cli
