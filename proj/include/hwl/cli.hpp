#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hwl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;     // verify found failing criteria, or an unexpected error
inline constexpr int kExitConfig = 2;     // bad flags, config or input files
inline constexpr int kExitPrecision = 3;  // precision or tolerance not attainable

/// Runs one subcommand (sieve, gallagher, forms, petersson, second-moment, verify).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace hwl
