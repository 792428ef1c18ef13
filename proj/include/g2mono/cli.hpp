#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace g2mono {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the g2mono command line. Results go to `out` as one JSON object per
/// line; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for sweeps: G2MONO_THREADS if set, else the hardware count.
unsigned sweep_threads();

std::string version();

}  // namespace g2mono
