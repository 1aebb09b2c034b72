#include "lorarel/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "lorarel/analytic.hpp"
#include "lorarel/channel.hpp"
#include "lorarel/geometry.hpp"
#include "lorarel/validation.hpp"

namespace lorarel::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Options shared by every subcommand that reads a NetworkConfig. Values are
// kept as strings and routed through set_config_value so flags and config
// files share one parser.
struct ConfigOptions {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;  // key, value
  std::vector<std::pair<std::string, CLI::Option*>> flags;
  std::vector<std::string> flag_values;
  CLI::Option* seed = nullptr;
  std::uint64_t seed_value = 0;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "flat key = value config file")->check(CLI::ExistingFile);
    seed = app.add_option("--seed", seed_value, "base seed (falls back to LORA_REL_SEED)");
    static constexpr std::pair<const char*, const char*> kFlags[] = {
        {"--mean-devices", "mean_devices"},
        {"--duty-cycle", "duty_cycle"},
        {"--cell-radius", "cell_radius_km"},
        {"--tx-power", "tx_power_dbm"},
        {"--path-loss-exponent", "path_loss_exponent"},
        {"--noise-density", "noise_density_dbm_hz"},
        {"--noise-figure", "noise_figure_db"},
        {"--bandwidth", "bandwidth_hz"},
        {"--carrier", "carrier_hz"},
        {"--min-distance", "min_distance_km"},
        {"--co-channel-rejection", "co_channel_rejection"},
        {"--path-loss-form", "path_loss_form"},
    };
    flag_values.resize(std::size(kFlags));
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
      flags.emplace_back(kFlags[i].second,
                         app.add_option(kFlags[i].first, flag_values[i], std::string("overrides ") + kFlags[i].second));
    }
  }

  // Flags > config file > defaults. Returns the config and the file's keys.
  std::pair<NetworkConfig, ConfigEntries> resolve() const {
    NetworkConfig cfg;
    ConfigEntries entries;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot read config file " + config_path);
      entries = read_config_entries(in);
      apply_config_entries(cfg, entries);
    }
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (flags[i].second->count() > 0) set_config_value(cfg, flags[i].first, flag_values[i]);
    }
    if (seed->count() > 0) {
      cfg.seed = seed_value;
    } else if (!entries.contains("seed")) {
      if (const char* env = std::getenv("LORA_REL_SEED"); env != nullptr && *env != '\0') {
        set_config_value(cfg, "seed", env);
      }
    }
    cfg.validate();
    return {cfg, entries};
  }
};

struct SweepOptions {
  ConfigOptions config;
  CLI::Option* realizations = nullptr;
  std::uint64_t realizations_value = 0;
  bool full = false;
  std::string joint_mode = "success-product";
  std::string sir_mode = "substitution";
  unsigned threads = 0;
  std::string out_path;
  std::size_t points = 0;
  CLI::Option* lo = nullptr;
  CLI::Option* hi = nullptr;
  double lo_value = 0.0;
  double hi_value = 0.0;

  void attach(CLI::App& app, SweepKind kind) {
    config.attach(app);
    realizations = app.add_option("--realizations", realizations_value, "realizations per point")
                       ->check(CLI::PositiveNumber);
    app.add_flag("--full", full, "use 1e5 realizations per point");
    app.add_option("--joint-mode", joint_mode)->check(CLI::IsMember({"success-product", "outage-product"}));
    app.add_option("--sir-mode", sir_mode)->check(CLI::IsMember({"substitution", "mean-sir"}));
    app.add_option("--threads", threads, "worker threads (0 = all cores)");
    app.add_option("--out", out_path, "write CSV here instead of stdout");
    if (kind == SweepKind::kDistance) {
      points = 120;
      app.add_option("--points", points, "grid points")->check(CLI::PositiveNumber);
      lo = app.add_option("--d-min", lo_value, "first distance in km (default R / points)");
      hi = app.add_option("--d-max", hi_value, "last distance in km (default R)");
    } else {
      points = 30;
      app.add_option("--points", points, "grid points")->check(CLI::Range(2, 100000));
      lo = app.add_option("--n-bar-min", lo_value, "smallest mean device count (default 1)");
      hi = app.add_option("--n-bar-max", hi_value, "largest mean device count (default 3000)");
    }
  }

  // --realizations > --full > config file > desk default.
  std::uint64_t resolve_realizations(const NetworkConfig& cfg, const ConfigEntries& entries) const {
    if (realizations->count() > 0) return realizations_value;
    if (full) return kFullRealizations;
    if (entries.contains("realizations")) return cfg.realizations;
    return kDeskRealizations;
  }
};

std::string number(double x) { return fmt::format("{}", x); }

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed writing to stdout");
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + out_path + " for writing");
  file << text;
  file.close();
  if (!file) throw std::runtime_error("failed writing " + out_path);
}

int run_sweep(const SweepOptions& opts, SweepKind kind, std::ostream& out) {
  const auto [cfg, entries] = opts.config.resolve();
  SweepSpec spec;
  spec.kind = kind;
  spec.realizations_per_point = opts.resolve_realizations(cfg, entries);
  spec.seed = cfg.seed;
  spec.modes = {parse_joint_mode(opts.joint_mode), parse_sir_mode(opts.sir_mode)};
  spec.threads = opts.threads;

  std::vector<CurvePoint> curve;
  if (kind == SweepKind::kDistance) {
    const double hi = opts.hi->count() > 0 ? opts.hi_value : cfg.cell_radius_km;
    if (opts.lo->count() > 0 || opts.hi->count() > 0) {
      const double lo = opts.lo->count() > 0 ? opts.lo_value : hi / static_cast<double>(opts.points);
      if (opts.points == 1) {
        spec.grid = {hi};
      } else {
        if (!(hi > lo)) throw UsageError("--d-max must exceed --d-min");
        for (std::size_t i = 0; i < opts.points; ++i) {
          spec.grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(opts.points - 1));
        }
        spec.grid.back() = hi;
      }
    } else {
      spec.grid = default_distance_grid(cfg.cell_radius_km, opts.points);
    }
    curve = success_vs_distance(cfg, spec);
  } else {
    const double lo = opts.lo->count() > 0 ? opts.lo_value : 1.0;
    const double hi = opts.hi->count() > 0 ? opts.hi_value : 3000.0;
    if (!(lo > 0.0 && hi > lo)) throw UsageError("density grid needs 0 < --n-bar-min < --n-bar-max");
    spec.grid = log_grid(lo, hi, opts.points);
    curve = coverage_vs_density(cfg, spec);
  }
  emit(format_curve_csv(curve, kind), opts.out_path, out);
  return 0;
}

}  // namespace

std::string format_curve_csv(const std::vector<CurvePoint>& curve, SweepKind kind) {
  std::string csv = kind == SweepKind::kDistance ? "d_km" : "n_bar";
  csv += ",p_snr,p_max_co,p_co,p_sf,p_snr_sf,se_snr,se_max_co,se_co,se_sf,se_snr_sf\n";
  for (const CurvePoint& pt : curve) {
    const auto& p = pt.probs;
    const auto& s = pt.std_error;
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", number(pt.abscissa), number(p.p_snr),
                       number(p.p_max_co), number(p.p_co), number(p.p_sf), number(p.p_snr_sf),
                       number(s.p_snr), number(s.p_max_co), number(s.p_co), number(s.p_sf),
                       number(s.p_snr_sf));
  }
  return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LoRa uplink reliability: closed forms and Monte Carlo sweeps", "lora-rel"};
  app.require_subcommand(1);

  SweepOptions distance_opts;
  auto* distance = app.add_subcommand("sweep-distance", "success probability vs. distance (CSV)");
  distance_opts.attach(*distance, SweepKind::kDistance);

  SweepOptions density_opts;
  auto* density = app.add_subcommand("sweep-density", "coverage probability vs. mean device count (CSV)");
  density_opts.attach(*density, SweepKind::kDensity);

  ConfigOptions closed_cfg;
  double gamma_bar = 0.0;
  double distance_km = 0.0;
  int sf = 0;
  auto* closed = app.add_subcommand("closed-form", "evaluate the outage closed form or SNR success");
  closed_cfg.attach(*closed);
  auto* gamma_opt = closed->add_option("--gamma-bar", gamma_bar, "mean SIR (linear)");
  auto* distance_opt = closed->add_option("--distance", distance_km, "device distance in km");
  auto* sf_opt = closed->add_option("--sf", sf, "spreading factor (default: annulus SF)");

  ConfigOptions validate_cfg;
  auto* validate = app.add_subcommand("validate", "run the oracle and invariant checks");
  validate_cfg.attach(*validate);

  std::vector<std::string> argv_storage{"lora-rel"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*distance) return run_sweep(distance_opts, SweepKind::kDistance, out);
    if (*density) return run_sweep(density_opts, SweepKind::kDensity, out);

    if (*closed) {
      const bool has_gamma = gamma_opt->count() > 0;
      const bool has_distance = distance_opt->count() > 0 || sf_opt->count() > 0;
      if (has_gamma == has_distance) {
        throw UsageError("closed-form needs exactly one of --gamma-bar or --distance [--sf]");
      }
      if (has_gamma) {
        if (!(gamma_bar >= 0.0)) throw UsageError("--gamma-bar must be >= 0");
        const double outage = outage_closed_form(gamma_bar);
        out << fmt::format("gamma_bar={} outage={} success={}\n", number(gamma_bar), number(outage),
                           number(1.0 - outage));
        return 0;
      }
      if (distance_opt->count() == 0) throw UsageError("--sf needs --distance");
      const NetworkConfig cfg = closed_cfg.resolve().first;
      if (!(distance_km >= cfg.min_distance_km && distance_km <= cfg.cell_radius_km)) {
        throw UsageError(fmt::format("--distance must lie in [{}, {}] km", cfg.min_distance_km, cfg.cell_radius_km));
      }
      const int used_sf = sf_opt->count() > 0 ? sf : annulus_to_sf(distance_km, cfg.cell_radius_km);
      if (used_sf < kMinSf || used_sf > kMaxSf) throw UsageError("--sf must lie in 7..12");
      const double p = snr_success_probability(distance_km, used_sf, cfg);
      out << fmt::format("d_km={} sf={} p_snr={}\n", number(distance_km), used_sf, number(p));
      return 0;
    }

    if (*validate) {
      const NetworkConfig cfg = validate_cfg.resolve().first;
      bool all = true;
      for (const CheckResult& c : run_validation(cfg, cfg.seed)) {
        all = all && c.passed;
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << '\n';
      }
      return all ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lorarel::cli
