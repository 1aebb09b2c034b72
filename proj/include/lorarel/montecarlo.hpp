#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lorarel/analytic.hpp"
#include "lorarel/params.hpp"

namespace lorarel {

enum class SweepKind { kDistance, kDensity };

enum class SirMode {
  kSubstitution,  // instantaneous SIR per realization, averaged afterwards
  kMeanSir,       // mean finite SIR per point, closed form applied once
};

std::string to_string(SirMode mode);
SirMode parse_sir_mode(const std::string& text);

struct SweepModes {
  JointMode joint = JointMode::kSuccessProduct;
  SirMode sir = SirMode::kSubstitution;
};

struct SweepSpec {
  SweepKind kind = SweepKind::kDistance;
  std::vector<double> grid;
  std::uint64_t realizations_per_point = 10000;
  std::uint64_t seed = 0;
  SweepModes modes;
  unsigned threads = 0;  // 0 = hardware concurrency; never affects results
};

struct CurvePoint {
  double abscissa = 0.0;
  ScenarioProbabilities probs;
  ScenarioProbabilities std_error;
};

/// 0.1, 0.2, ..., 12.0 km scaled to the cell radius (120 points).
std::vector<double> default_distance_grid(double radius_km, std::size_t points = 120);

/// Log-spaced from `lo` to `hi` inclusive; endpoints are exact.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

/// 30 log-spaced values in [1, 3000].
std::vector<double> default_density_grid(double max_devices = 3000.0, std::size_t points = 30);

/// Success probability against the desired device's distance. p_snr comes
/// from the closed form; the interference scenarios are Monte Carlo averages
/// over realizations of the device field.
std::vector<CurvePoint> success_vs_distance(const NetworkConfig& cfg, const SweepSpec& spec);

/// Coverage probability against mean device count: the same per-realization
/// success averaged over a desired device placed uniformly by area. The
/// desired placement reuses one stream per realization index across all grid
/// points, so the p_snr column is identical at every N.
std::vector<CurvePoint> coverage_vs_density(const NetworkConfig& cfg, const SweepSpec& spec);

struct SirSummary {
  double mean = kInfinity;    // over finite draws; inf when none are finite
  double median = kInfinity;  // over all draws, infinite ones included
  double infinite_fraction = 0.0;
  std::uint64_t finite_count = 0;
};

struct MeanSirEstimate {
  SirSummary max_co;
  SirSummary co;
  SirSummary inter;
};

SirSummary summarize_sir(std::vector<double> draws);
MeanSirEstimate summarize_sir(const std::vector<SirSample>& samples);

/// Sample statistics of the three SIRs at a fixed distance. Ratios of
/// exponentials have no finite mean, so the median is reported as well.
MeanSirEstimate estimate_mean_sir(const NetworkConfig& cfg, double d_km, std::uint64_t n,
                                  std::uint64_t seed);

}  // namespace lorarel
