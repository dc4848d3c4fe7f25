#pragma once

// posthoc-lab command line: audit, counterexample, evalue, recheck.
// Exit codes: 0 pass, 1 audit failure, 2 usage or configuration error.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace posthoc::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kBackendEnv = "POSTHOC_LAB_BACKEND";

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace posthoc::cli
