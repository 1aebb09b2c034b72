#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lorarel/montecarlo.hpp"

namespace lorarel::cli {

inline constexpr std::uint64_t kDeskRealizations = 10000;
inline constexpr std::uint64_t kFullRealizations = 100000;

/// Header plus one row per point; numbers in shortest round-trip decimal.
std::string format_curve_csv(const std::vector<CurvePoint>& curve, SweepKind kind);

/// Entry point behind the `lora-rel` binary. `args` excludes the program
/// name. Returns the process exit code: 0 on success, 1 on runtime or I/O
/// failure, 2 on usage or configuration errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lorarel::cli
