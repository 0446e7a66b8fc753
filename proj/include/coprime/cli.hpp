#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coprime {

inline constexpr const char* kVersion = "0.1.0";

// Exit code contract: 0 success, 1 domain/validation error, 2 usage error,
// 3 acceptance-relevant finding (collisions, unsafe pairs, compromised
// moduli). Findings are successful runs whose result warrants attention,
// so CI can branch on them.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFindings = 3;

// Stdout carries the deterministic payload (byte-identical for identical
// flags and seed); progress and timings go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv);

}  // namespace coprime
