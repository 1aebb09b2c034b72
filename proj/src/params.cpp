#include "lorarel/params.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <set>
#include <string_view>

namespace lorarel {

namespace {

constexpr std::array<SfParams, kAnnuli> kSfTable{{
    {7, 5.468, 36.6, 98, -123.0, -6.0, 0.0 / 6.0, 1.0 / 6.0},
    {8, 3.125, 64.0, 56, -126.0, -9.0, 1.0 / 6.0, 2.0 / 6.0},
    {9, 1.757, 113.0, 31, -129.0, -12.0, 2.0 / 6.0, 3.0 / 6.0},
    {10, 0.967, 204.0, 17, -132.0, -15.0, 3.0 / 6.0, 4.0 / 6.0},
    {11, 0.537, 372.0, 9, -134.5, -17.5, 4.0 / 6.0, 5.0 / 6.0},
    {12, 0.293, 682.0, 5, -137.0, -20.0, 5.0 / 6.0, 6.0 / 6.0},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key, "config key '" + key + "': expected a real number, got '" +
                               std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(const std::string& key, std::string_view text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec == std::errc{} && ptr == end) return value;
  // Accept integral reals such as 1e5.
  const double real = parse_real(key, text);
  if (real < 0.0 || real != std::floor(real) || real > 1.8e19) {
    throw ConfigError(key, "config key '" + key + "': expected a non-negative integer, got '" +
                               std::string(text) + "'");
  }
  return static_cast<std::uint64_t>(real);
}

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw ConfigError(key, std::string("invalid ") + key + ": " + message);
}

}  // namespace

const std::array<SfParams, kAnnuli>& sf_table() { return kSfTable; }

const SfParams& sf_params(int sf) {
  if (sf < kMinSf || sf > kMaxSf) {
    throw DomainError("spreading factor " + std::to_string(sf) + " outside 7..12");
  }
  return kSfTable[static_cast<std::size_t>(sf - kMinSf)];
}

void NetworkConfig::validate() const {
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
  require(std::isfinite(carrier_hz) && carrier_hz > 0.0, "carrier_hz", "must be > 0");
  require(std::isfinite(noise_density_dbm_hz), "noise_density_dbm_hz", "must be finite");
  require(std::isfinite(noise_figure_db), "noise_figure_db", "must be finite");
  require(path_loss_exponent > 2.0 && std::isfinite(path_loss_exponent), "path_loss_exponent",
          "must be > 2");
  require(std::isfinite(tx_power_dbm), "tx_power_dbm", "must be finite");
  require(duty_cycle > 0.0 && duty_cycle <= 1.0, "duty_cycle", "must lie in (0, 1]");
  require(mean_devices >= 0.0 && std::isfinite(mean_devices), "mean_devices", "must be >= 0");
  require(cell_radius_km > 0.0 && std::isfinite(cell_radius_km), "cell_radius_km", "must be > 0");
  require(annuli == kAnnuli, "annuli", "only 6 annuli are supported");
  require(min_distance_km > 0.0, "min_distance_km", "must be > 0");
  require(min_distance_km < cell_radius_km, "min_distance_km", "must be < cell_radius_km");
  require(realizations > 0, "realizations", "must be > 0");
  require(co_channel_rejection > 0.0 && std::isfinite(co_channel_rejection),
          "co_channel_rejection", "must be > 0");
}

double NetworkConfig::intensity_per_km2() const {
  return mean_devices / (std::numbers::pi * cell_radius_km * cell_radius_km);
}

double dbm_to_mw(double x_dbm) { return std::pow(10.0, x_dbm / 10.0); }

double mw_to_dbm(double x_mw) { return 10.0 * std::log10(x_mw); }

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double noise_floor_dbm(const NetworkConfig& cfg) {
  if (!(cfg.bandwidth_hz > 0.0)) {
    throw ConfigError("bandwidth_hz", "invalid bandwidth_hz: must be > 0");
  }
  return cfg.noise_density_dbm_hz + cfg.noise_figure_db + 10.0 * std::log10(cfg.bandwidth_hz);
}

double wavelength_m(const NetworkConfig& cfg) {
  if (!(cfg.carrier_hz > 0.0)) {
    throw ConfigError("carrier_hz", "invalid carrier_hz: must be > 0");
  }
  return kSpeedOfLight / cfg.carrier_hz;
}

std::string to_string(PathLossForm form) {
  return form == PathLossForm::kStandard ? "standard" : "unscaled_wavelength";
}

PathLossForm parse_path_loss_form(const std::string& text) {
  if (text == "standard") return PathLossForm::kStandard;
  if (text == "unscaled_wavelength") return PathLossForm::kUnscaledWavelength;
  throw ConfigError("path_loss_form",
                    "invalid path_loss_form '" + text + "' (standard|unscaled_wavelength)");
}

bool set_config_value(NetworkConfig& cfg, const std::string& key, const std::string& value) {
  const std::string_view v = trim(value);
  if (key == "bandwidth_hz") cfg.bandwidth_hz = parse_real(key, v);
  else if (key == "carrier_hz") cfg.carrier_hz = parse_real(key, v);
  else if (key == "noise_density_dbm_hz") cfg.noise_density_dbm_hz = parse_real(key, v);
  else if (key == "noise_figure_db") cfg.noise_figure_db = parse_real(key, v);
  else if (key == "path_loss_exponent") cfg.path_loss_exponent = parse_real(key, v);
  else if (key == "tx_power_dbm") cfg.tx_power_dbm = parse_real(key, v);
  else if (key == "duty_cycle") cfg.duty_cycle = parse_real(key, v);
  else if (key == "mean_devices") cfg.mean_devices = parse_real(key, v);
  else if (key == "cell_radius_km") cfg.cell_radius_km = parse_real(key, v);
  else if (key == "annuli") cfg.annuli = static_cast<int>(parse_unsigned(key, v));
  else if (key == "min_distance_km") cfg.min_distance_km = parse_real(key, v);
  else if (key == "realizations") cfg.realizations = parse_unsigned(key, v);
  else if (key == "seed") cfg.seed = parse_unsigned(key, v);
  else if (key == "co_channel_rejection") cfg.co_channel_rejection = parse_real(key, v);
  else if (key == "path_loss_form") cfg.path_loss_form = parse_path_loss_form(std::string(v));
  else return false;
  return true;
}

ConfigEntries read_config_entries(std::istream& in) {
  static const std::set<std::string, std::less<>> kKnown{
      "bandwidth_hz",   "carrier_hz",      "noise_density_dbm_hz", "noise_figure_db",
      "path_loss_exponent", "tx_power_dbm", "duty_cycle",          "mean_devices",
      "cell_radius_km", "annuli",          "min_distance_km",      "realizations",
      "seed",           "co_channel_rejection", "path_loss_form"};

  ConfigEntries entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (!kKnown.contains(key)) {
      throw ConfigError(key, "config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!entries.emplace(key, value).second) {
      throw ConfigError(key, "config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return entries;
}

void apply_config_entries(NetworkConfig& cfg, const ConfigEntries& entries) {
  for (const auto& [key, value] : entries) set_config_value(cfg, key, value);
}

NetworkConfig parse_config(std::istream& in, NetworkConfig base) {
  apply_config_entries(base, read_config_entries(in));
  return base;
}

}  // namespace lorarel
