#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omnikit::cli {

namespace exit_code {
    inline constexpr int ok = 0;
    inline constexpr int usage = 2;
    inline constexpr int negative = 3; ///< not omni, target absent, or no omnimosaic exists
    inline constexpr int budget = 4;
}

/// Entry point of the omnikit tool. `args` excludes the program name. Matrix
/// input named "-" is read from `in`; the payload goes to `out`, diagnostics
/// to `err`.
auto run(const std::vector<std::string> & args, std::istream & in, std::ostream & out, std::ostream & err) -> int;

} // namespace omnikit::cli
