#include "lorarel/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace lorarel {

ChannelModel ChannelModel::from_config(const NetworkConfig& cfg) {
  ChannelModel model;
  model.wavelength_m = lorarel::wavelength_m(cfg);
  model.path_loss_exponent = cfg.path_loss_exponent;
  model.noise_mw = dbm_to_mw(noise_floor_dbm(cfg));
  model.tx_power_mw = dbm_to_mw(cfg.tx_power_dbm);
  model.form = cfg.path_loss_form;
  return model;
}

double path_loss(double d_km, const ChannelModel& model) {
  if (!(d_km > 0.0)) {
    throw DomainError("path loss needs a positive distance, got " + std::to_string(d_km) + " km");
  }
  const double four_pi_d = 4.0 * std::numbers::pi * (1000.0 * d_km);
  if (model.form == PathLossForm::kUnscaledWavelength) {
    return model.wavelength_m / std::pow(four_pi_d, model.path_loss_exponent);
  }
  return std::pow(model.wavelength_m / four_pi_d, model.path_loss_exponent);
}

double sample_fading(Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); }

double snr_success_probability(double d_km, double threshold_linear, const ChannelModel& model) {
  // P[|h|^2 >= N theta / (P l(d))] for unit-mean exponential |h|^2.
  const double required = model.noise_mw * threshold_linear / (model.tx_power_mw * path_loss(d_km, model));
  return std::exp(-required);
}

double snr_success_probability(double d_km, int sf, const ChannelModel& model) {
  return snr_success_probability(d_km, db_to_linear(sf_params(sf).snr_threshold_db), model);
}

double snr_success_probability(double d_km, int sf, const NetworkConfig& cfg) {
  return snr_success_probability(d_km, sf, ChannelModel::from_config(cfg));
}

double snr_success_empirical(double d_km, double threshold_linear, const ChannelModel& model,
                             Rng& rng, std::uint64_t n) {
  if (n == 0) throw DomainError("empirical SNR success needs at least one draw");
  const double mean_snr = model.tx_power_mw * path_loss(d_km, model) / model.noise_mw;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (mean_snr * sample_fading(rng) >= threshold_linear) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

double snr_success_empirical(double d_km, int sf, const NetworkConfig& cfg, Rng& rng,
                             std::uint64_t n) {
  return snr_success_empirical(d_km, db_to_linear(sf_params(sf).snr_threshold_db),
                               ChannelModel::from_config(cfg), rng, n);
}

}  // namespace lorarel
