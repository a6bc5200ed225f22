#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metric_sdr::cli {

enum ExitCode : int { kSuccess = 0, kPartialFailure = 1, kUsage = 2 };

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metric_sdr::cli
