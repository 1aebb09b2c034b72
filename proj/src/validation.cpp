#include "lorarel/validation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "lorarel/analytic.hpp"
#include "lorarel/channel.hpp"
#include "lorarel/geometry.hpp"
#include "lorarel/interference.hpp"
#include "lorarel/rng.hpp"

namespace lorarel {

namespace {

CheckResult check_quadrature() {
  double worst = 0.0;
  for (double g : {0.01, 0.1, 1.0, 2.0, 10.0, 100.0, 1e4}) {
    worst = std::max(worst, std::abs(outage_numeric_oracle(g, 1e-8) - outage_closed_form(g)));
  }
  return {"outage quadrature matches closed form", worst < 1e-6, fmt::format("max |diff| = {:.3e}", worst)};
}

CheckResult check_bound_quadrature() {
  bool ok = true;
  for (double g : {0.01, 0.1, 1.0, 2.0, 10.0, 100.0, 1e4}) {
    ok = ok && outage_numeric_oracle(g, 1e-8, ErrorRateModel::kQBound) >= outage_numeric_oracle(g, 1e-8);
  }
  return {"bound-model outage dominates exact outage", ok, ""};
}

CheckResult check_q_bound() {
  bool ok = std::abs(q_function(0.0) - 0.5) < 1e-12;
  for (int i = 1; i <= 80; ++i) {
    const double x = 0.1 * i;
    ok = ok && q_bound(x) >= q_function(x);
  }
  return {"Q(0) = 1/2 and Chernoff bound dominates Q on (0, 8]", ok, ""};
}

CheckResult check_snr(const NetworkConfig& cfg, std::uint64_t seed) {
  const ChannelModel model = ChannelModel::from_config(cfg);
  constexpr std::uint64_t kDraws = 100000;
  double worst_ratio = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double d = cfg.cell_radius_km * i / 20.0;
    const int sf = annulus_to_sf(d, cfg.cell_radius_km);
    const double theta = db_to_linear(sf_params(sf).snr_threshold_db);
    Rng rng = derive_stream(seed, 0x534e52, static_cast<std::uint64_t>(i));
    const double closed = snr_success_probability(d, theta, model);
    const double empirical = snr_success_empirical(d, theta, model, rng, kDraws);
    const double sigma = std::sqrt(closed * (1.0 - closed) / kDraws);
    const double diff = std::abs(empirical - closed);
    if (diff > 0.0) worst_ratio = std::max(worst_ratio, sigma > 0.0 ? diff / sigma : kInfinity);
  }
  return {"SNR success: fading draws agree with closed form (3 sigma)", worst_ratio < 3.0,
          fmt::format("worst |diff| / sigma = {:.3f}", worst_ratio)};
}

CheckResult check_saw_tooth(const NetworkConfig& cfg) {
  const ChannelModel model = ChannelModel::from_config(cfg);
  bool ok = true;
  std::string detail;
  for (int k = 1; k < kAnnuli; ++k) {
    const double border = cfg.cell_radius_km * k / kAnnuli;
    const double eps = 1e-9 * cfg.cell_radius_km;
    const double below = snr_success_probability(border - eps, annulus_to_sf(border - eps, cfg.cell_radius_km), model);
    const double above = snr_success_probability(border + eps, annulus_to_sf(border + eps, cfg.cell_radius_km), model);
    ok = ok && above > below;
    detail += fmt::format("{}{:.4f}->{:.4f}", k == 1 ? "" : " ", below, above);
  }
  return {"SNR success jumps up across each annulus border", ok, detail};
}

CheckResult check_interference(const NetworkConfig& cfg, std::uint64_t seed) {
  const ChannelModel model = ChannelModel::from_config(cfg);
  NetworkConfig dense = cfg;
  dense.duty_cycle = 0.05;  // more interferers per realization
  bool ok = true;
  double worst = 0.0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    Rng rng = derive_stream(seed, 0x494e54, r);
    const double d = cfg.min_distance_km + (cfg.cell_radius_km - cfg.min_distance_km) * uniform01(rng);
    const Realization real = sample_realization(dense, d, rng);
    const InterferenceTally t = tally_interference(real, model);
    const SirSample s = sir_from_tally(t, 4.0);
    if (t.co_count > 0) ok = ok && 4.0 * s.gamma_co <= s.gamma_max_co;
    double total = 0.0;
    for (const auto& dev : real.interferers) {
      if (dev.active) total += received_power_mw(dev, model);
    }
    if (total > 0.0) worst = std::max(worst, std::abs(t.co_sum_mw + t.inter_sum_mw - total) / total);
  }
  ok = ok && worst <= 1e-9;
  return {"interference partition and capture dominance", ok, fmt::format("max relative partition error = {:.3e}", worst)};
}

}  // namespace

std::vector<CheckResult> run_validation(const NetworkConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  return {check_quadrature(),   check_bound_quadrature(), check_q_bound(),
          check_snr(cfg, seed), check_saw_tooth(cfg),     check_interference(cfg, seed)};
}

}  // namespace lorarel
