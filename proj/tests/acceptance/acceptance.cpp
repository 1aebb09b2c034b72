// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lorarel/analytic.hpp"
#include "lorarel/channel.hpp"
#include "lorarel/cli.hpp"
#include "lorarel/geometry.hpp"
#include "lorarel/interference.hpp"
#include "lorarel/montecarlo.hpp"
#include "stat_oracles.hpp"

using namespace lorarel;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

constexpr std::uint64_t kSeed = 20201030;

// Shared desk-scale sweeps (1e4 realizations per point).
struct Sweeps {
  std::vector<CurvePoint> distance;
  double distance_seconds = 0.0;
  std::vector<CurvePoint> density;
  double density_seconds = 0.0;
};

Sweeps& sweeps() {
  static Sweeps s = [] {
    Sweeps out;
    const NetworkConfig cfg;
    SweepSpec spec;
    spec.kind = SweepKind::kDistance;
    spec.grid = default_distance_grid(cfg.cell_radius_km);
    spec.realizations_per_point = cli::kDeskRealizations;
    spec.seed = kSeed;
    auto t0 = Clock::now();
    out.distance = success_vs_distance(cfg, spec);
    out.distance_seconds = seconds_since(t0);

    spec.kind = SweepKind::kDensity;
    spec.grid = default_density_grid();
    t0 = Clock::now();
    out.density = coverage_vs_density(cfg, spec);
    out.density_seconds = seconds_since(t0);
    return out;
  }();
  return s;
}

const CurvePoint& at(const std::vector<CurvePoint>& curve, double x) {
  for (const auto& p : curve) {
    if (std::abs(p.abscissa - x) < 1e-9) return p;
  }
  throw std::runtime_error("grid lacks abscissa " + std::to_string(x));
}

const std::pair<const char*, double ScenarioProbabilities::*> kScenarios[] = {
    {"snr", &ScenarioProbabilities::p_snr},       {"max_co", &ScenarioProbabilities::p_max_co},
    {"co", &ScenarioProbabilities::p_co},         {"sf", &ScenarioProbabilities::p_sf},
    {"snr_sf", &ScenarioProbabilities::p_snr_sf},
};

Outcome closed_form_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double g : {0.01, 0.1, 1.0, 2.0, 10.0, 100.0, 1e4}) {
    worst = std::max(worst, std::abs(outage_numeric_oracle(g, 1e-8) - outage_closed_form(g)));
  }
  const double t = seconds_since(t0);
  return {worst < 1e-6 && t < 1.0, fmt("max |quadrature - closed form| = %.2e, %.3f s", worst, t)};
}

Outcome q_function_checks() {
  const double at_zero = std::abs(q_function(0.0) - 0.5);
  bool dominated = true;
  for (int i = 1; i <= 80; ++i) dominated = dominated && q_bound(0.1 * i) >= q_function(0.1 * i);
  return {at_zero < 1e-12 && dominated, fmt("|Q(0) - 0.5| = %.1e, bound dominates on 0.1..8: %s", at_zero,
                                            dominated ? "yes" : "no")};
}

Outcome snr_model() {
  const auto t0 = Clock::now();
  const NetworkConfig cfg;
  const ChannelModel model = ChannelModel::from_config(cfg);
  constexpr std::uint64_t kDraws = 100000;
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double d = cfg.cell_radius_km * i / 20.0;
    const int sf = annulus_to_sf(d, cfg.cell_radius_km);
    Rng rng = derive_stream(kSeed, 3, static_cast<std::uint64_t>(i));
    const double closed = snr_success_probability(d, sf, model);
    const double emp = snr_success_empirical(d, db_to_linear(sf_params(sf).snr_threshold_db), model, rng, kDraws);
    worst = std::max(worst, std::abs(emp - closed) / oracle::binomial_sigma(closed, kDraws));
  }
  const double t = seconds_since(t0);
  return {worst < 3.0 && t < 10.0, fmt("worst |empirical - closed| = %.2f sigma over 20 distances, %.2f s", worst, t)};
}

Outcome saw_tooth() {
  const NetworkConfig cfg;
  bool ok = true;
  std::string detail;
  for (int k = 1; k <= 5; ++k) {
    const double border = cfg.cell_radius_km * k / 6.0;
    const double lo = border - 1e-9;
    const double hi = border + 1e-9;
    const double below = snr_success_probability(lo, annulus_to_sf(lo, cfg.cell_radius_km), cfg);
    const double above = snr_success_probability(hi, annulus_to_sf(hi, cfg.cell_radius_km), cfg);
    ok = ok && above > below;
    detail += fmt("%s%.0f km: %.4f -> %.4f", k == 1 ? "" : "; ", border, below, above);
  }
  return {ok, detail};
}

Outcome scenario_ordering() {
  const auto& curve = sweeps().distance;
  int violations = 0;
  for (const auto& p : curve) {
    const auto& q = p.probs;
    if (!(q.p_snr_sf <= q.p_sf && q.p_sf <= q.p_co && q.p_co <= q.p_max_co)) ++violations;
  }
  return {violations == 0 && curve.size() == 120,
          fmt("%d violations over %zu points (1e4 realizations each)", violations, curve.size())};
}

Outcome distance_trend() {
  const auto& curve = sweeps().distance;
  const CurvePoint& near = at(curve, 0.5);
  const CurvePoint& far = at(curve, 11.0);
  bool ok = true;
  std::string detail;
  for (auto [name, member] : kScenarios) {
    const double gap = near.probs.*member - far.probs.*member;
    const double se = std::hypot(near.std_error.*member, far.std_error.*member);
    ok = ok && gap > 3.0 * se;
    detail += fmt("%s %.3f>%.3f; ", name, near.probs.*member, far.probs.*member);
  }
  const double t = sweeps().distance_seconds;
  ok = ok && t < 60.0;
  return {ok, detail + fmt("sweep %.1f s", t)};
}

Outcome density_trend() {
  const auto& curve = sweeps().density;
  const CurvePoint& sparse = curve.front();
  const CurvePoint& dense = curve.back();
  bool ok = sparse.abscissa == 1.0 && dense.abscissa == 3000.0;
  std::string detail;
  for (auto [name, member] : kScenarios) {
    if (member == &ScenarioProbabilities::p_snr) continue;
    const double gap = sparse.probs.*member - dense.probs.*member;
    const double se = std::hypot(sparse.std_error.*member, dense.std_error.*member);
    ok = ok && gap > 3.0 * se;
    detail += fmt("%s %.3f>%.3f; ", name, sparse.probs.*member, dense.probs.*member);
  }
  bool snr_constant = true;
  for (const auto& p : curve) snr_constant = snr_constant && p.probs.p_snr == sparse.probs.p_snr;
  const double t = sweeps().density_seconds;
  ok = ok && snr_constant && t < 120.0;
  return {ok, detail + fmt("p_snr constant: %s; sweep %.1f s", snr_constant ? "yes" : "no", t)};
}

Outcome determinism() {
  auto run_with = [](const char* threads) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"sweep-distance", "--seed", "42", "--threads", threads}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto one = run_with("1");
  const auto eight = run_with("8");
  const bool ok = one.first == 0 && eight.first == 0 && one.second == eight.second && !one.second.empty();
  return {ok, fmt("threads 1 vs 8: %zu vs %zu bytes, %s", one.second.size(), eight.second.size(),
                  one.second == eight.second ? "identical" : "DIFFERENT")};
}

Outcome statistical_sanity() {
  Rng rng = derive_stream(kSeed, 9, 0);
  std::vector<std::uint64_t> counts;
  for (int i = 0; i < 100000; ++i) counts.push_back(sample_device_count(1500.0, rng));
  const auto m = oracle::moments(counts);
  const bool poisson_ok = std::abs(m.mean / 1500.0 - 1.0) < 0.01 && std::abs(m.variance / 1500.0 - 1.0) < 0.01;

  std::vector<double> area;
  for (int i = 0; i < 100000; ++i) {
    const Position p = sample_uniform_position(12.0, 0.001, rng);
    area.push_back(p.distance_km * p.distance_km / 144.0);
  }
  const double ks_p = oracle::ks_p_value(oracle::ks_statistic_uniform(area), area.size());

  const NetworkConfig cfg;
  double active = 0.0;
  constexpr int kRealizations = 10000;
  for (int i = 0; i < kRealizations; ++i) active += static_cast<double>(active_count(sample_realization(cfg, 6.0, rng)));
  active /= kRealizations;
  const double expected = cfg.duty_cycle * cfg.mean_devices;
  const bool thin_ok = std::abs(active / expected - 1.0) < 0.05;

  return {poisson_ok && ks_p > 0.01 && thin_ok,
          fmt("Poisson mean %.2f var %.1f; KS p = %.3f; active mean %.3f (expected %.1f)", m.mean, m.variance, ks_p,
              active, expected)};
}

Outcome interference_algebra() {
  const NetworkConfig cfg;
  const ChannelModel model = ChannelModel::from_config(cfg);
  NetworkConfig busy = cfg;
  busy.duty_cycle = 0.05;
  bool dominance = true;
  double worst = 0.0;
  int with_co = 0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    Rng rng = derive_stream(kSeed, 10, r);
    const double d = 0.05 + 11.95 * uniform01(rng);
    const Realization real = sample_realization(busy, d, rng);
    const InterferenceTally t = tally_interference(real, model);
    const SirSample s = sir_from_tally(t);
    if (t.co_count > 0) {
      ++with_co;
      dominance = dominance && 4.0 * s.gamma_co <= s.gamma_max_co;
    }
    double total = 0.0;
    for (const auto& dev : real.interferers) {
      if (dev.active) total += received_power_mw(dev, model);
    }
    if (total > 0.0) worst = std::max(worst, std::abs(t.co_sum_mw + t.inter_sum_mw - total) / total);
  }
  return {dominance && worst <= 1e-9,
          fmt("dominance held on %d fields with co-SF interferers; max partition error %.1e", with_co, worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"closed-form equivalence", closed_form_equivalence},
      {"Q-function", q_function_checks},
      {"SNR model", snr_model},
      {"saw-tooth", saw_tooth},
      {"scenario ordering", scenario_ordering},
      {"distance trend", distance_trend},
      {"density trend", density_trend},
      {"determinism", determinism},
      {"statistical sanity", statistical_sanity},
      {"interference algebra", interference_algebra},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s [%2d] %s: %s\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
