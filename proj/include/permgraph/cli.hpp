#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace permgraph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one CLI invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on domain errors and 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permgraph
