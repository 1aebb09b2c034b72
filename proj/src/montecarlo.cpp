#include "lorarel/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lorarel/channel.hpp"
#include "lorarel/geometry.hpp"
#include "lorarel/interference.hpp"
#include "lorarel/rng.hpp"

namespace lorarel {

namespace {

constexpr std::uint64_t kBlockSize = 256;
constexpr std::uint64_t kDesiredStreamTag = ~std::uint64_t{0};
constexpr std::uint64_t kMeanSirBatches = 20;

struct Draw {
  double p_snr = 1.0;
  SirSample sir;
};

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(begin, end) over fixed blocks of [0, n). Block boundaries do not
// depend on the thread count.
template <class Fn>
void parallel_blocks(std::uint64_t n, unsigned threads, Fn&& fn) {
  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), blocks));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        fn(b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

double& field(ScenarioProbabilities& p, int i) {
  switch (i) {
    case 0: return p.p_snr;
    case 1: return p.p_max_co;
    case 2: return p.p_co;
    case 3: return p.p_sf;
    default: return p.p_snr_sf;
  }
}

// Mean and standard error of per-realization success, summed in index order.
CurvePoint reduce_substitution(const std::vector<Draw>& draws, JointMode joint) {
  const auto n = static_cast<double>(draws.size());
  std::vector<ScenarioProbabilities> values;
  values.reserve(draws.size());
  for (const Draw& d : draws) values.push_back(scenario_success(d.p_snr, d.sir, joint));

  CurvePoint point;
  for (int k = 0; k < 5; ++k) {
    double sum = 0.0;
    for (auto& v : values) sum += field(v, k);
    const double mean = sum / n;
    double sq = 0.0;
    for (auto& v : values) {
      const double dev = field(v, k) - mean;
      sq += dev * dev;
    }
    field(point.probs, k) = mean;
    field(point.std_error, k) = draws.size() > 1 ? std::sqrt(sq / (n - 1.0) / n) : 0.0;
  }
  return point;
}

// Closed form applied once to the mean finite SIR; realizations without
// interferers count as certain success.
ScenarioProbabilities estimate_from_mean_sir(const std::vector<Draw>& draws, std::size_t begin,
                                             std::size_t end, JointMode joint) {
  auto effective_outage = [&](auto member) {
    double sum = 0.0;
    std::uint64_t finite = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const double g = draws[i].sir.*member;
      if (std::isfinite(g)) {
        sum += g;
        ++finite;
      }
    }
    if (finite == 0) return 0.0;
    const double share = static_cast<double>(finite) / static_cast<double>(end - begin);
    return share * outage_closed_form(sum / static_cast<double>(finite));
  };

  double snr_sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) snr_sum += draws[i].p_snr;

  ScenarioProbabilities p;
  p.p_snr = snr_sum / static_cast<double>(end - begin);
  p.p_max_co = 1.0 - effective_outage(&SirSample::gamma_max_co);
  const double co_outage = effective_outage(&SirSample::gamma_co);
  p.p_co = 1.0 - co_outage;
  p.p_sf = combine_sf(co_outage, effective_outage(&SirSample::gamma_inter), joint);
  p.p_snr_sf = combine_snr_sf(p.p_snr, p.p_sf);
  return p;
}

CurvePoint reduce_mean_sir(const std::vector<Draw>& draws, JointMode joint) {
  CurvePoint point;
  point.probs = estimate_from_mean_sir(draws, 0, draws.size(), joint);

  // Standard error from contiguous batch estimates.
  const std::size_t batches = std::min<std::size_t>(kMeanSirBatches, draws.size());
  if (batches < 2) return point;
  std::vector<ScenarioProbabilities> est;
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * draws.size() / batches;
    const std::size_t hi = (b + 1) * draws.size() / batches;
    est.push_back(estimate_from_mean_sir(draws, lo, hi, joint));
  }
  const auto nb = static_cast<double>(batches);
  for (int k = 0; k < 5; ++k) {
    double sum = 0.0;
    for (auto& e : est) sum += field(e, k);
    const double mean = sum / nb;
    double sq = 0.0;
    for (auto& e : est) sq += (field(e, k) - mean) * (field(e, k) - mean);
    field(point.std_error, k) = std::sqrt(sq / (nb - 1.0) / nb);
  }
  return point;
}

CurvePoint reduce(const std::vector<Draw>& draws, const SweepModes& modes) {
  return modes.sir == SirMode::kSubstitution ? reduce_substitution(draws, modes.joint)
                                             : reduce_mean_sir(draws, modes.joint);
}

void check_spec(const NetworkConfig& cfg, const SweepSpec& spec, SweepKind expected) {
  cfg.validate();
  if (spec.kind != expected) throw std::invalid_argument("sweep spec kind does not match the sweep");
  if (spec.realizations_per_point == 0) {
    throw std::invalid_argument("a sweep point needs at least one realization");
  }
  if (spec.grid.empty()) throw std::invalid_argument("sweep grid is empty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) throw std::invalid_argument("sweep grid must be strictly increasing");
  }
}

}  // namespace

std::string to_string(SirMode mode) {
  return mode == SirMode::kSubstitution ? "substitution" : "mean-sir";
}

SirMode parse_sir_mode(const std::string& text) {
  if (text == "substitution") return SirMode::kSubstitution;
  if (text == "mean-sir") return SirMode::kMeanSir;
  throw std::invalid_argument("unknown SIR mode '" + text + "' (substitution|mean-sir)");
}

std::vector<double> default_distance_grid(double radius_km, std::size_t points) {
  std::vector<double> grid;
  grid.reserve(points);
  for (std::size_t i = 1; i <= points; ++i) {
    grid.push_back(radius_km * static_cast<double>(i) / static_cast<double>(points));
  }
  return grid;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw std::invalid_argument("log grid needs 0 < lo < hi and >= 2 points");
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> default_density_grid(double max_devices, std::size_t points) {
  return log_grid(1.0, max_devices, points);
}

std::vector<CurvePoint> success_vs_distance(const NetworkConfig& cfg, const SweepSpec& spec) {
  check_spec(cfg, spec, SweepKind::kDistance);
  for (double d : spec.grid) {
    if (!(d >= cfg.min_distance_km && d <= cfg.cell_radius_km)) {
      throw OutOfCellError("distance grid value " + std::to_string(d) + " km outside the cell");
    }
  }
  const ChannelModel model = ChannelModel::from_config(cfg);
  const std::uint64_t n = spec.realizations_per_point;

  std::vector<CurvePoint> curve;
  curve.reserve(spec.grid.size());
  std::vector<Draw> draws(n);
  for (std::size_t p = 0; p < spec.grid.size(); ++p) {
    const double d = spec.grid[p];
    const double p_snr = snr_success_probability(d, annulus_to_sf(d, cfg.cell_radius_km), model);
    parallel_blocks(n, spec.threads, [&](std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t r = begin; r < end; ++r) {
        Rng rng = derive_stream(spec.seed, p, r);
        const Realization real = sample_realization(cfg, d, rng, CandidateSet::kActiveOnly);
        draws[r] = {p_snr, sir_sample(real, model, cfg.co_channel_rejection)};
      }
    });
    CurvePoint point = reduce(draws, spec.modes);
    point.abscissa = d;
    // SNR column is exact rather than an average of identical values, and the
    // constant factor comes out of the joint average.
    point.probs.p_snr = p_snr;
    point.std_error.p_snr = 0.0;
    point.probs.p_snr_sf = combine_snr_sf(p_snr, point.probs.p_sf);
    point.std_error.p_snr_sf = p_snr * point.std_error.p_sf;
    curve.push_back(point);
  }
  return curve;
}

std::vector<CurvePoint> coverage_vs_density(const NetworkConfig& cfg, const SweepSpec& spec) {
  check_spec(cfg, spec, SweepKind::kDensity);
  for (double m : spec.grid) {
    if (!(m >= 0.0)) throw ConfigError("mean_devices", "density grid values must be >= 0");
  }
  const ChannelModel model = ChannelModel::from_config(cfg);
  const std::uint64_t n = spec.realizations_per_point;

  std::vector<CurvePoint> curve;
  curve.reserve(spec.grid.size());
  std::vector<Draw> draws(n);
  for (std::size_t p = 0; p < spec.grid.size(); ++p) {
    NetworkConfig point_cfg = cfg;
    point_cfg.mean_devices = spec.grid[p];
    parallel_blocks(n, spec.threads, [&](std::uint64_t begin, std::uint64_t end) {
      std::vector<EndDevice> scratch;
      for (std::uint64_t r = begin; r < end; ++r) {
        Rng desired_rng = derive_stream(spec.seed, kDesiredStreamTag, r);
        const Position pos =
            sample_uniform_position(cfg.cell_radius_km, cfg.min_distance_km, desired_rng);
        Realization real;
        real.desired = make_desired_device(point_cfg, pos.distance_km, sample_fading(desired_rng));
        real.desired.position.angle_rad = pos.angle_rad;

        Rng rng = derive_stream(spec.seed, p, r);
        real.candidate_count = sample_interferers(point_cfg, rng, CandidateSet::kActiveOnly, real.interferers);

        const double p_snr = snr_success_probability(pos.distance_km, real.desired.sf, model);
        draws[r] = {p_snr, sir_sample(real, model, cfg.co_channel_rejection)};
      }
    });
    CurvePoint point = reduce(draws, spec.modes);
    point.abscissa = spec.grid[p];
    curve.push_back(point);
  }
  return curve;
}

SirSummary summarize_sir(std::vector<double> draws) {
  SirSummary s;
  if (draws.empty()) return s;
  double sum = 0.0;
  for (double g : draws) {
    if (std::isfinite(g)) {
      sum += g;
      ++s.finite_count;
    }
  }
  const auto n = draws.size();
  s.infinite_fraction = static_cast<double>(n - s.finite_count) / static_cast<double>(n);
  if (s.finite_count > 0) s.mean = sum / static_cast<double>(s.finite_count);

  std::sort(draws.begin(), draws.end());
  s.median = n % 2 == 1 ? draws[n / 2] : 0.5 * (draws[n / 2 - 1] + draws[n / 2]);
  return s;
}

MeanSirEstimate summarize_sir(const std::vector<SirSample>& samples) {
  auto column = [&](double SirSample::*member) {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.*member);
    return summarize_sir(std::move(v));
  };
  return {column(&SirSample::gamma_max_co), column(&SirSample::gamma_co),
          column(&SirSample::gamma_inter)};
}

MeanSirEstimate estimate_mean_sir(const NetworkConfig& cfg, double d_km, std::uint64_t n,
                                  std::uint64_t seed) {
  cfg.validate();
  if (n == 0) throw std::invalid_argument("mean SIR estimate needs n >= 1");
  const ChannelModel model = ChannelModel::from_config(cfg);
  std::vector<SirSample> samples;
  samples.reserve(n);
  for (std::uint64_t r = 0; r < n; ++r) {
    Rng rng = derive_stream(seed, 0, r);
    samples.push_back(sir_sample(sample_realization(cfg, d_km, rng, CandidateSet::kActiveOnly), model,
                                 cfg.co_channel_rejection));
  }
  return summarize_sir(samples);
}

}  // namespace lorarel
