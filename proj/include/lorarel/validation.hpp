#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lorarel/params.hpp"

namespace lorarel {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quadrature-vs-closed-form oracle, Q-function bound, SNR closed form vs
/// fading draws, saw-tooth at annulus borders and the interference algebra.
/// Deterministic for a given seed.
std::vector<CheckResult> run_validation(const NetworkConfig& cfg, std::uint64_t seed);

}  // namespace lorarel
