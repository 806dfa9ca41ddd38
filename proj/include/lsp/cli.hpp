#pragma once

#include <string>
#include <vector>

namespace lsp {

// Default seed used by every subcommand when --seed is not given.
inline constexpr uint64_t kDefaultSeed = 42;

// Runs one CLI invocation; args excludes the program name. Returns 0 on
// success, 1 on verification failure, 2 on usage or runtime errors.
int dispatch(const std::vector<std::string>& args);

}  // namespace lsp
