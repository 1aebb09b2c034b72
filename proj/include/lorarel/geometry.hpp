#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lorarel/params.hpp"
#include "lorarel/rng.hpp"

namespace lorarel {

class OutOfCellError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Position {
  double distance_km = 0.0;
  double angle_rad = 0.0;
};

struct EndDevice {
  Position position;
  int sf = kMinSf;
  double tx_power_mw = 0.0;
  double fading = 1.0;  // |h|^2
  bool active = true;
};

/// One sampled interference field around the gateway.
struct Realization {
  EndDevice desired;
  std::vector<EndDevice> interferers;
  /// Poisson device count N before activity thinning.
  std::uint64_t candidate_count = 0;
};

/// Which candidates sample_realization materializes. Inactive devices never
/// contribute interference, so kActiveOnly draws N, thins it binomially and
/// only places the survivors. Both produce the same law for the active set.
enum class CandidateSet { kAll, kActiveOnly };

/// Poisson(mean). Throws ConfigError for a negative or non-finite mean.
std::uint64_t sample_device_count(double mean, Rng& rng);

/// Maps two uniforms to a position uniform by area on the disk of radius R:
/// distance = max(d_min, R sqrt(u)), angle = 2 pi v.
Position position_from_uniforms(double u, double v, double radius_km, double min_distance_km);

Position sample_uniform_position(double radius_km, double min_distance_km, Rng& rng);

/// 7 + floor(6 d / R), with annuli half-open [kR/6, (k+1)R/6) and the outer
/// one closed at R. Throws OutOfCellError outside [0, R].
int annulus_to_sf(double distance_km, double radius_km);

/// Desired device pinned at `distance_km` (angle 0) with its annulus SF.
EndDevice make_desired_device(const NetworkConfig& cfg, double distance_km, double fading);

/// Candidate interferers: N ~ Poisson(mean_devices), uniform positions,
/// annulus SFs, unit-mean exponential fading and Bernoulli(duty_cycle)
/// activity. Appends to `out` and returns N.
std::uint64_t sample_interferers(const NetworkConfig& cfg, Rng& rng, CandidateSet set,
                                 std::vector<EndDevice>& out);

Realization sample_realization(const NetworkConfig& cfg, double desired_distance_km, Rng& rng,
                               CandidateSet set = CandidateSet::kAll);

std::size_t active_count(const Realization& r);

}  // namespace lorarel
