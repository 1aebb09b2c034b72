#include "lorarel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "lorarel/channel.hpp"

namespace lorarel {

std::uint64_t sample_device_count(double mean, Rng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw ConfigError("mean_devices", "invalid mean_devices: Poisson mean must be >= 0");
  }
  if (mean == 0.0) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(rng);
}

Position position_from_uniforms(double u, double v, double radius_km, double min_distance_km) {
  return {std::max(min_distance_km, radius_km * std::sqrt(u)), 2.0 * std::numbers::pi * v};
}

Position sample_uniform_position(double radius_km, double min_distance_km, Rng& rng) {
  const double u = uniform01(rng);
  const double v = uniform01(rng);
  return position_from_uniforms(u, v, radius_km, min_distance_km);
}

int annulus_to_sf(double distance_km, double radius_km) {
  if (!(distance_km >= 0.0 && distance_km <= radius_km)) {
    throw OutOfCellError("distance " + std::to_string(distance_km) + " km outside the cell [0, " +
                         std::to_string(radius_km) + "]");
  }
  const int ring = static_cast<int>(std::floor(kAnnuli * distance_km / radius_km));
  return kMinSf + std::min(ring, kAnnuli - 1);
}

EndDevice make_desired_device(const NetworkConfig& cfg, double distance_km, double fading) {
  if (!(distance_km >= cfg.min_distance_km && distance_km <= cfg.cell_radius_km)) {
    throw OutOfCellError("desired distance " + std::to_string(distance_km) + " km outside [" +
                         std::to_string(cfg.min_distance_km) + ", " +
                         std::to_string(cfg.cell_radius_km) + "]");
  }
  EndDevice dev;
  dev.position = {distance_km, 0.0};
  dev.sf = annulus_to_sf(distance_km, cfg.cell_radius_km);
  dev.tx_power_mw = dbm_to_mw(cfg.tx_power_dbm);
  dev.fading = fading;
  dev.active = true;
  return dev;
}

std::uint64_t sample_interferers(const NetworkConfig& cfg, Rng& rng, CandidateSet set,
                                 std::vector<EndDevice>& out) {
  const std::uint64_t n = sample_device_count(cfg.mean_devices, rng);
  const double tx_mw = dbm_to_mw(cfg.tx_power_dbm);

  auto place = [&](bool active) {
    EndDevice dev;
    dev.position = sample_uniform_position(cfg.cell_radius_km, cfg.min_distance_km, rng);
    dev.sf = annulus_to_sf(dev.position.distance_km, cfg.cell_radius_km);
    dev.tx_power_mw = tx_mw;
    dev.fading = sample_fading(rng);
    dev.active = active;
    out.push_back(dev);
  };

  if (set == CandidateSet::kAll) {
    out.reserve(out.size() + n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const bool active = cfg.duty_cycle >= 1.0 || uniform01(rng) < cfg.duty_cycle;
      place(active);
    }
  } else {
    std::uint64_t k = n;
    if (cfg.duty_cycle < 1.0 && n > 0) {
      k = std::binomial_distribution<std::uint64_t>(n, cfg.duty_cycle)(rng);
    }
    out.reserve(out.size() + k);
    for (std::uint64_t i = 0; i < k; ++i) place(true);
  }
  return n;
}

Realization sample_realization(const NetworkConfig& cfg, double desired_distance_km, Rng& rng,
                               CandidateSet set) {
  Realization r;
  r.desired = make_desired_device(cfg, desired_distance_km, sample_fading(rng));
  r.candidate_count = sample_interferers(cfg, rng, set, r.interferers);
  return r;
}

std::size_t active_count(const Realization& r) {
  return static_cast<std::size_t>(
      std::count_if(r.interferers.begin(), r.interferers.end(), [](const EndDevice& d) { return d.active; }));
}

}  // namespace lorarel
