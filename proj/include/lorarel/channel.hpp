#pragma once

#include <cstdint>

#include "lorarel/params.hpp"
#include "lorarel/rng.hpp"

namespace lorarel {

/// Linearized channel constants derived from a NetworkConfig.
struct ChannelModel {
  double wavelength_m = 0.0;
  double path_loss_exponent = 2.7;
  double noise_mw = 0.0;
  double tx_power_mw = 0.0;
  double fading_mean_square = 1.0;  // unit-mean |h|^2
  PathLossForm form = PathLossForm::kStandard;

  static ChannelModel from_config(const NetworkConfig& cfg);
};

/// Free-space power gain at `d_km`. Throws DomainError for d <= 0.
double path_loss(double d_km, const ChannelModel& model);

/// |h|^2 for Rayleigh fading: exponential with mean 1.
double sample_fading(Rng& rng);

/// Probability that P |h|^2 l(d) / N >= theta for exponential |h|^2, given a
/// linear threshold.
double snr_success_probability(double d_km, double threshold_linear, const ChannelModel& model);

/// As above with theta taken from the SF table.
double snr_success_probability(double d_km, int sf, const ChannelModel& model);
double snr_success_probability(double d_km, int sf, const NetworkConfig& cfg);

/// Fraction of `n` fading draws that clear the SNR threshold.
double snr_success_empirical(double d_km, double threshold_linear, const ChannelModel& model,
                             Rng& rng, std::uint64_t n);
double snr_success_empirical(double d_km, int sf, const NetworkConfig& cfg, Rng& rng,
                             std::uint64_t n);

}  // namespace lorarel
