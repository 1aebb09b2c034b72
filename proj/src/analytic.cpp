#include "lorarel/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace lorarel {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) and weights; the
// odd entries are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kMaxIntervals = 4000;

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod(F&& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

std::string to_string(JointMode mode) {
  return mode == JointMode::kSuccessProduct ? "success-product" : "outage-product";
}

JointMode parse_joint_mode(const std::string& text) {
  if (text == "success-product") return JointMode::kSuccessProduct;
  if (text == "outage-product") return JointMode::kOutageProduct;
  throw std::invalid_argument("unknown joint mode '" + text + "' (success-product|outage-product)");
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_bound(double x) {
  if (!(x > 0.0)) throw DomainError("Q-function bound needs x > 0");
  return 0.5 * std::exp(-0.5 * x * x);
}

double outage_closed_form(double gamma_bar) {
  if (!(gamma_bar >= 0.0)) throw DomainError("mean SIR must be >= 0");
  // 2/0 = inf gives outage 0.5; 2/inf = 0 gives outage 0.
  const double root = 1.0 / std::sqrt(1.0 + 2.0 / gamma_bar);
  return 0.5 * (1.0 - root);
}

double success_from_sir(double sir) { return 1.0 - outage_closed_form(sir); }

QuadratureResult outage_quadrature(double gamma_bar, double rel_tol, ErrorRateModel model) {
  if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar)) {
    throw DomainError("quadrature oracle needs a finite mean SIR > 0");
  }
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw DomainError("rel_tol must lie in (0, 1e-3]");

  // With a = g s^2 the integrand becomes R_e(sqrt(g) s) 2 s exp(-s^2): smooth
  // at the origin and negligible beyond s = 10.
  const double scale = std::sqrt(gamma_bar);
  auto integrand = [&](double s) {
    const double x = scale * s;
    const double rate = model == ErrorRateModel::kExactQ ? q_function(x) : 0.5 * std::exp(-0.5 * x * x);
    return rate * 2.0 * s * std::exp(-s * s);
  };

  // Breakpoints where the error-rate factor decays (x ~ 1, 4, 16) and where
  // the density does (s ~ 1, 3).
  std::vector<double> cuts{0.0};
  for (double c : {1.0 / scale, 4.0 / scale, 16.0 / scale, 1.0, 3.0}) {
    if (c > 0.0 && c < 10.0) cuts.push_back(c);
  }
  cuts.push_back(10.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> work;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Segment seg = gauss_kronrod(integrand, cuts[i], cuts[i + 1]);
    total += seg.value;
    total_error += seg.error;
    work.push(seg);
  }

  int intervals = static_cast<int>(work.size());
  while (total_error > rel_tol * std::abs(total) && total_error > 1e-300) {
    if (intervals >= kMaxIntervals) {
      std::ostringstream msg;
      msg << "outage quadrature did not converge: gamma_bar=" << gamma_bar << " value=" << total
          << " error=" << total_error << " intervals=" << intervals;
      throw NumericalError(msg.str());
    }
    const Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod(integrand, worst.lo, mid);
    const Segment right = gauss_kronrod(integrand, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
    ++intervals;
  }

  // Re-sum from the leaves to drop the running-update rounding.
  double value = 0.0;
  double error = 0.0;
  while (!work.empty()) {
    value += work.top().value;
    error += work.top().error;
    work.pop();
  }
  return {value, error, intervals};
}

double outage_numeric_oracle(double gamma_bar, double rel_tol, ErrorRateModel model) {
  return outage_quadrature(gamma_bar, rel_tol, model).value;
}

double combine_sf(double p_co_outage, double p_inter_outage, JointMode mode) {
  if (mode == JointMode::kOutageProduct) return 1.0 - p_co_outage * p_inter_outage;
  return (1.0 - p_co_outage) * (1.0 - p_inter_outage);
}

double combine_snr_sf(double p_snr, double p_sf) { return p_snr * p_sf; }

ScenarioProbabilities scenario_success(double p_snr, const SirSample& sir, JointMode mode) {
  ScenarioProbabilities p;
  p.p_snr = p_snr;
  p.p_max_co = success_from_sir(sir.gamma_max_co);
  p.p_co = success_from_sir(sir.gamma_co);
  p.p_sf = combine_sf(1.0 - p.p_co, outage_closed_form(sir.gamma_inter), mode);
  p.p_snr_sf = combine_snr_sf(p_snr, p.p_sf);
  return p;
}

}  // namespace lorarel
