#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace snn::cli {

// Exit statuses.
inline constexpr int kAccept = 0;
inline constexpr int kReject = 1;
inline constexpr int kUsage = 2;
inline constexpr int kViolation = 3;

// Runs one `snn` invocation. `args` excludes the program name. Network files
// named `-` are read from `in`; everything else is written to `out`/`err`.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace snn::cli
