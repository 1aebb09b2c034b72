#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lorarel/analytic.hpp"

using namespace lorarel;

TEST_CASE("Q-function") {
  CHECK(std::abs(q_function(0.0) - 0.5) < 1e-12);
  CHECK(q_function(40.0) == 0.0);
  CHECK(q_function(INFINITY) == 0.0);

  // mpmath erfc(x / sqrt 2) / 2
  const std::pair<double, double> table[] = {
      {0.5, 0.30853753872598690}, {1.0, 0.15865525393145705}, {1.6449, 0.049995217468346303},
      {2.0, 0.022750131948179207}, {3.0, 0.0013498980316300945}, {5.0, 2.8665157187919391e-7},
      {8.0, 6.2209605742717841e-16}, {-1.0, 0.84134474606854295},
  };
  for (auto [x, q] : table) {
    CAPTURE(x);
    CHECK(std::abs(q_function(x) - q) <= 1e-12);
    CHECK(q_function(x) == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("Q-function bound") {
  CHECK(q_bound(1.0) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-15));
  CHECK(q_bound(1.0) == doctest::Approx(0.30326532985631671));
  CHECK(q_bound(2.0) == doctest::Approx(0.067667641618306346));
  for (int i = 1; i <= 80; ++i) {
    const double x = 0.1 * i;
    CHECK(q_bound(x) >= q_function(x));
  }
  CHECK_THROWS_AS(q_bound(0.0), DomainError);
  CHECK_THROWS_AS(q_bound(-1.0), DomainError);
}

TEST_CASE("outage closed form") {
  CHECK(outage_closed_form(0.0) == 0.5);
  CHECK(outage_closed_form(INFINITY) == 0.0);
  CHECK(outage_closed_form(2.0) == doctest::Approx(0.14644660940672624).epsilon(1e-14));
  CHECK_THROWS_AS(outage_closed_form(-1.0), DomainError);
  CHECK_THROWS_AS(outage_closed_form(NAN), DomainError);

  // mpmath values of (1 - sqrt(g / (2 + g))) / 2
  const std::pair<double, double> table[] = {
      {0.01, 0.46473271920707009}, {0.1, 0.39089105488200381}, {1.0, 0.21132486540518712},
      {10.0, 0.043564535412361572}, {100.0, 0.0049262285116628454}, {1e4, 4.9992501249781289e-5},
  };
  for (auto [g, p] : table) CHECK(outage_closed_form(g) == doctest::Approx(p).epsilon(1e-11));
}

TEST_CASE("outage closed form is strictly decreasing and within (0, 0.5]") {
  double prev = outage_closed_form(0.0);
  for (int i = 1; i <= 2000; ++i) {
    const double g = std::pow(10.0, -4.0 + 0.005 * i);
    const double p = outage_closed_form(g);
    CHECK(p > 0.0);
    CHECK(p <= 0.5);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("success from SIR") {
  CHECK(success_from_sir(INFINITY) == 1.0);
  CHECK(success_from_sir(0.0) == 0.5);
  CHECK(success_from_sir(2.0) == doctest::Approx(0.85355339059327376).epsilon(1e-14));
}

TEST_CASE("quadrature oracle reproduces the closed form") {
  for (double g : {0.01, 0.1, 1.0, 2.0, 10.0, 100.0, 1e4}) {
    CAPTURE(g);
    const QuadratureResult q = outage_quadrature(g, 1e-8);
    CHECK(std::abs(q.value - outage_closed_form(g)) < 1e-6);
    CHECK(std::abs(q.value - outage_closed_form(g)) <= 1e-8 * q.value);
    CHECK(q.error_estimate <= 1e-8 * q.value);
  }
}

TEST_CASE("bound-model quadrature") {
  for (double g : {0.01, 0.1, 1.0, 2.0, 10.0, 100.0, 1e4}) {
    CAPTURE(g);
    const double bound = outage_numeric_oracle(g, 1e-8, ErrorRateModel::kQBound);
    // integral of exp(-a/2)/2 against exp(-a/g)/g is 1 / (2 + g)
    CHECK(bound == doctest::Approx(1.0 / (2.0 + g)).epsilon(1e-8));
    CHECK(bound >= outage_numeric_oracle(g, 1e-8));
  }
}

TEST_CASE("quadrature argument checks") {
  CHECK_THROWS_AS(outage_numeric_oracle(0.0, 1e-8), DomainError);
  CHECK_THROWS_AS(outage_numeric_oracle(-2.0, 1e-8), DomainError);
  CHECK_THROWS_AS(outage_numeric_oracle(2.0, 1e-2), DomainError);
  CHECK_THROWS_AS(outage_numeric_oracle(2.0, 0.0), DomainError);
  // An unreachable tolerance exhausts the interval budget.
  CHECK_THROWS_AS(outage_numeric_oracle(2.0, 1e-300), NumericalError);
}

TEST_CASE("joint SF combination") {
  CHECK(combine_sf(0.0, 0.0, JointMode::kSuccessProduct) == 1.0);
  CHECK(combine_sf(0.0, 0.0, JointMode::kOutageProduct) == 1.0);
  CHECK(combine_sf(0.2, 0.3, JointMode::kSuccessProduct) == doctest::Approx(0.56));
  CHECK(combine_sf(0.2, 0.3, JointMode::kOutageProduct) == doctest::Approx(0.94));
  CHECK(combine_sf(0.2, 0.3) == doctest::Approx(0.56));

  CHECK(combine_snr_sf(1.0, 0.37) == 0.37);
  CHECK(combine_snr_sf(0.9, 0.5) == doctest::Approx(0.45));
  CHECK(combine_snr_sf(0.0, 0.7) == 0.0);

  CHECK(parse_joint_mode("outage-product") == JointMode::kOutageProduct);
  CHECK(to_string(JointMode::kSuccessProduct) == "success-product");
  CHECK_THROWS(parse_joint_mode("sum"));
}

TEST_CASE("scenario ordering holds for arbitrary SIRs") {
  // success-product mode: p_snr_sf <= p_sf <= p_co <= p_max_co whenever the
  // capture SIR is at least the co-SF SIR.
  Rng rng(8);
  for (int i = 0; i < 100000; ++i) {
    SirSample s;
    const double draw = std::exp(20.0 * (uniform01(rng) - 0.5));
    s.gamma_co = uniform01(rng) < 0.1 ? INFINITY : draw;
    s.gamma_max_co = 4.0 * s.gamma_co * (1.0 + 3.0 * uniform01(rng));
    s.gamma_inter = uniform01(rng) < 0.1 ? INFINITY : std::exp(20.0 * (uniform01(rng) - 0.5));
    const double p_snr = uniform01(rng);
    const ScenarioProbabilities p = scenario_success(p_snr, s);
    CHECK(p.p_snr_sf <= p.p_sf);
    CHECK(p.p_sf <= p.p_co);
    CHECK(p.p_co <= p.p_max_co);
    CHECK(p.p_co >= 0.5);
    CHECK(p.p_max_co <= 1.0);
  }
}
