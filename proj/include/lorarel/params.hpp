#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace lorarel {

/// Raised when a configuration value is outside its valid range. `key()` names
/// the offending NetworkConfig field when one applies.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Argument outside the mathematical domain of a model function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr int kMinSf = 7;
inline constexpr int kMaxSf = 12;
inline constexpr int kAnnuli = 6;

/// One row of the LoRa SF schedule (25 byte payload, 125 kHz).
struct SfParams {
  int sf;
  double bitrate_kbps;
  double airtime_ms;
  int tx_per_hour;
  double sensitivity_dbm;  // stored for reference; no model equation uses it
  double snr_threshold_db;
  double annulus_inner_frac;
  double annulus_outer_frac;
};

const std::array<SfParams, kAnnuli>& sf_table();

/// Row for a given SF; throws DomainError outside 7..12.
const SfParams& sf_params(int sf);

enum class PathLossForm {
  kStandard,      // (lambda / (4 pi d))^eta
  kUnscaledWavelength,  // lambda / (4 pi d)^eta
};

/// Deployment and channel constants. Values stay in table units (dB, dBm, Hz,
/// km); conversion to linear happens at the point of use.
struct NetworkConfig {
  double bandwidth_hz = 125000.0;
  double carrier_hz = 868.1e6;
  double noise_density_dbm_hz = -174.0;
  double noise_figure_db = 6.0;
  double path_loss_exponent = 2.7;
  double tx_power_dbm = 19.0;
  double duty_cycle = 0.01;
  double mean_devices = 1500.0;
  double cell_radius_km = 12.0;
  int annuli = kAnnuli;
  double min_distance_km = 0.001;
  std::uint64_t realizations = 100000;
  std::uint64_t seed = 0;
  /// Capture margin of the strongest-interferer model (linear, 4 ~ 6 dB).
  double co_channel_rejection = 4.0;
  PathLossForm path_loss_form = PathLossForm::kStandard;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  /// Device intensity per km^2, mean_devices / (pi R^2).
  double intensity_per_km2() const;
};

double dbm_to_mw(double x_dbm);
double mw_to_dbm(double x_mw);
double db_to_linear(double x_db);

/// N0 + NF + 10 log10(BW), in dBm.
double noise_floor_dbm(const NetworkConfig& cfg);

double wavelength_m(const NetworkConfig& cfg);

std::string to_string(PathLossForm form);
PathLossForm parse_path_loss_form(const std::string& text);

using ConfigEntries = std::map<std::string, std::string>;

/// Reads flat `key = value` text. Blank lines and lines starting with '#' are
/// ignored. Unknown keys, duplicate keys and lines without '=' throw
/// ConfigError.
ConfigEntries read_config_entries(std::istream& in);

/// Applies entries over `cfg`; malformed values throw ConfigError. The result
/// is not validated.
void apply_config_entries(NetworkConfig& cfg, const ConfigEntries& entries);

NetworkConfig parse_config(std::istream& in, NetworkConfig base = {});

/// Assigns one field by its config-file key. Returns false for unknown keys.
bool set_config_value(NetworkConfig& cfg, const std::string& key, const std::string& value);

}  // namespace lorarel
