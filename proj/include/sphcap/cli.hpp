#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphcap {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

/// Entry point of the sphcap tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sphcap
