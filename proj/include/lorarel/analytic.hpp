#pragma once

#include <stdexcept>
#include <string>

#include "lorarel/interference.hpp"

namespace lorarel {

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Success probability of one frame under each interference scenario.
struct ScenarioProbabilities {
  double p_snr = 1.0;
  double p_max_co = 1.0;
  double p_co = 1.0;
  double p_sf = 1.0;
  double p_snr_sf = 1.0;
};

enum class JointMode {
  kSuccessProduct,  // (1 - Po_co)(1 - Po_inter)
  kOutageProduct,   // 1 - Po_co Po_inter
};

std::string to_string(JointMode mode);
JointMode parse_joint_mode(const std::string& text);

/// Gaussian tail probability, 0.5 erfc(x / sqrt 2).
double q_function(double x);

/// Chernoff bound 0.5 exp(-x^2 / 2); DomainError for x <= 0.
double q_bound(double x);

/// Outage of coherent FSK averaged over an exponential SIR with mean
/// `gamma_bar`: 0.5 (1 - sqrt(g / (2 + g))). Accepts +inf (outage 0);
/// DomainError for negative or NaN input.
///
/// Evaluated as 0.5 (1 - 1 / sqrt(1 + 2 / g)), which is monotone in g under
/// rounding as well as in exact arithmetic.
double outage_closed_form(double gamma_bar);

/// 1 - outage_closed_form(sir). Lies in [0.5, 1]: the FSK error rate never
/// exceeds one half, so zero SIR still decodes half the time.
double success_from_sir(double sir);

enum class ErrorRateModel {
  kExactQ,   // R_e(a) = Q(sqrt a)
  kQBound,   // R_e(a) = 0.5 exp(-a / 2)
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) evaluation of
///   integral_0^inf R_e(a) exp(-a / g) / g da
/// to relative accuracy `rel_tol` in (0, 1e-3]. Throws NumericalError with
/// diagnostics if the interval budget runs out first.
QuadratureResult outage_quadrature(double gamma_bar, double rel_tol,
                                   ErrorRateModel model = ErrorRateModel::kExactQ);

double outage_numeric_oracle(double gamma_bar, double rel_tol,
                             ErrorRateModel model = ErrorRateModel::kExactQ);

/// Joint success under Co-SF and Inter-SF interference from their outages.
double combine_sf(double p_co_outage, double p_inter_outage,
                  JointMode mode = JointMode::kSuccessProduct);

/// SNR and SF interference treated as independent.
double combine_snr_sf(double p_snr, double p_sf);

/// Per-realization scenario success from a closed-form SNR success and the
/// realization's instantaneous SIRs.
ScenarioProbabilities scenario_success(double p_snr, const SirSample& sir,
                                       JointMode mode = JointMode::kSuccessProduct);

}  // namespace lorarel
