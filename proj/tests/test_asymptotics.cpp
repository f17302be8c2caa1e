#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "tailcens/asymptotics.hpp"
#include "tailcens/errors.hpp"
#include "test_support.hpp"

using namespace tailcens;
using Catch::Approx;

namespace {

const CensorModel kBurrPair{HeavyTailDist::burr(10, 2, 5), HeavyTailDist::burr(10, 4, 1)};
const CensorModel kParetoPair{HeavyTailDist::pareto(0.5), HeavyTailDist::pareto(1.5)};

}  // namespace

TEST_CASE("variance of the T statistic", "[asymptotics]") {
  CHECK(sigma2_t(0.3, 1.0, 0.0) == Approx(0.09).epsilon(1e-15));
  CHECK(sigma2_t(1.0 / 6.0, 2.0 / 3.0, 0.0) == Approx(0.125).epsilon(1e-14));
  CHECK_THROWS_AS(sigma2_t(0.25, 0.5, 0.0), TheoremConditionViolated);
  CHECK_THROWS_AS(sigma2_t(0.25, 0.75, -1.0), TheoremConditionViolated);
  try {
    sigma2_t(0.1, 0.45, 0.0);
  } catch (const TheoremConditionViolated& e) {
    CHECK(e.p_beta() == 0.45);
  }
}

TEST_CASE("variance of gamma(beta)", "[asymptotics]") {
  CHECK(sigma2_gamma(0.25, 2.0 / 3.0, 0.0) == Approx(0.125).epsilon(1e-14));
  for (double p : {0.6, 0.75, 0.9, 1.0})
    CHECK(sigma2_gamma(0.4, p, 0.0) == Approx(0.16 * p / (2 * p - 1)).epsilon(1e-14));

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> g1(0.05, 2.0), pp(0.52, 0.999), bb(-0.3, 3.0);
  int points = 0;
  while (points < 500) {
    const double gamma1 = g1(gen), p = pp(gen), beta = bb(gen);
    if (!(p * (1 + gamma1 * beta) > 0.5)) continue;
    ++points;
    const double scale = 1 + beta * gamma1;
    const double via_t = sigma2_t(p * gamma1, p, beta) * std::pow(scale, 4);
    REQUIRE(testing::rel_close(sigma2_gamma(gamma1, p, beta), via_t, 1e-12));
    REQUIRE(testing::rel_close(sigma2_gamma(gamma1, p, beta),
                               sigma2_gamma_factored(gamma1, p, beta), 1e-12));
  }
  CHECK_THROWS_AS(sigma2_gamma(0.3, 0.5, 0.0), TheoremConditionViolated);
}

TEST_CASE("gamma(beta) variance turns at p_beta = 1", "[asymptotics]") {
  // σ²_{γ1,β} ∝ p_β²/(2p_β - 1) in β: falls while p_β < 1 and rises beyond.
  for (double gamma1 : {0.1, 0.5, 1.0})
    for (double p : {0.6, 0.75, 0.9}) {
      const double h = 1e-4;
      for (double beta = 0.0; beta <= 3.0; beta += 0.05) {
        const double pb = p * (1 + gamma1 * beta);
        if (std::abs(pb - 1.0) < 1e-3) continue;
        const double slope = sigma2_gamma(gamma1, p, beta + h) - sigma2_gamma(gamma1, p, beta - h);
        if (pb < 1.0)
          REQUIRE(slope < 0.0);
        else
          REQUIRE(slope > 0.0);
      }
    }
}

TEST_CASE("asymptotic bias", "[asymptotics]") {
  const auto burr = AsymptoticParams::from_model(kBurrPair, 0.0, 100, 10000);
  CHECK(burr.gamma == Approx(1.0 / 14.0).epsilon(1e-14));
  CHECK(burr.p == Approx(5.0 / 7.0).epsilon(1e-14));
  CHECK(burr.hall_z.C == Approx(1e6).epsilon(1e-12));
  CHECK(m_t(burr) == Approx(0.1157912911977614697608).epsilon(1e-13));
  CHECK(m_gamma(burr) == m_t(burr));

  // F's second-order rate 4 exceeds G's rate 2, with p = 2/3.
  const CensorModel faster_f{HeavyTailDist::burr(10, 4, 1), HeavyTailDist::burr(10, 2, 1)};
  const auto rates_reversed = AsymptoticParams::from_model(faster_f, 0.5, 100, 10000);
  REQUIRE(rates_reversed.p_beta() > 0.5);
  CHECK(m_t(rates_reversed) == 0.0);
  CHECK(m_gamma(rates_reversed) == 0.0);

  const auto pareto = AsymptoticParams::from_model(kParetoPair, 0.5, 100, 10000);
  CHECK(m_t(pareto) == 0.0);
  CHECK(m_gamma(pareto) == 0.0);
  CHECK(pareto.lambda == 0.0);

  const auto outside = AsymptoticParams::from_model(kBurrPair, -5.0, 100, 10000);
  CHECK_THROWS_AS(m_t(outside), TheoremConditionViolated);
  const CensorModel swapped{kBurrPair.censor, kBurrPair.target};
  CHECK_THROWS_AS(m_gamma(AsymptoticParams::from_model(swapped, 0.0, 100, 10000)),
                  TheoremConditionViolated);

  // |m_{γ1,β}| increases with β when F's second order dominates.
  double last = 0.0;
  for (double beta = 0.0; beta <= 3.0; beta += 0.1) {
    const double m = std::abs(m_gamma(AsymptoticParams::from_model(kBurrPair, beta, 100, 10000)));
    REQUIRE(m > last);
    last = m;
  }
}

TEST_CASE("pseudo-ML variance and bias ordering", "[asymptotics]") {
  CHECK(sigma2_hill(0.1, 5.0 / 7.0) == Approx(0.014).epsilon(1e-14));
  CHECK(sigma2_hill(0.3, 1.0) == Approx(0.09).epsilon(1e-15));
  CHECK_THROWS_AS(sigma2_hill(0.3, 0.0), DomainError);
  for (double gamma1 : {0.05, 0.5, 2.0})
    for (double p = 0.5 + 1e-6; p < 1.0 - 1e-6; p += 0.001)
      REQUIRE(sigma2_hill(gamma1, p) < sigma2_gamma(gamma1, p, 0.0));

  for (double gamma1 : {0.1, 0.5, 1.0})
    for (double gamma2 : {0.2, 1.0, 3.0})
      for (double beta1 : {0.5, 1.0, 2.0}) {
        const double gamma = gamma1 * gamma2 / (gamma1 + gamma2);
        REQUIRE((1 + gamma1 * beta1) / (1 + gamma * beta1) > 1.0);
      }
}

TEST_CASE("bias-reduced variance", "[asymptotics]") {
  CHECK(sigma2_br(1.0, 0.75, 1.0) == Approx(6.278125).epsilon(1e-14));
  for (double p = 0.55; p <= 0.95 + 1e-12; p += 0.01)
    for (double delta = 0.1; delta <= 2.0 + 1e-12; delta += 0.02)
      REQUIRE(sigma2_br(0.7, p, delta) > sigma2_gamma(0.7, p, 0.0));
  for (double p : {0.6, 0.8, 1.0}) {
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double delta : {1e2, 1e3, 1e4, 1e5, 1e6}) {
      const double ratio = sigma2_br(1.0, p, delta) / (p / (2 * p - 1));
      const double gap = std::abs(ratio - 1.0);
      REQUIRE(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 1e-4);
  }
  CHECK_THROWS_AS(sigma2_br(1.0, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(sigma2_br(1.0, 0.75, 0.0), DomainError);
}

TEST_CASE("second-order scale", "[asymptotics]") {
  CHECK(lambda_bias(100, 10000, 0.5).value == Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(lambda_bias(100, 10000, 0.5).exact);
  const auto exact = lambda_bias(100, 10000, 0.0);
  CHECK(exact.exact);
  CHECK(exact.value == Approx(10.0));
  CHECK(lambda_bias(400, 400, 0.7).value == Approx(20.0).epsilon(1e-14));
  CHECK_THROWS_AS(lambda_bias(0, 10, 0.5), IndexError);
}

TEST_CASE("confidence intervals", "[asymptotics]") {
  const auto degenerate = confidence_interval(0.3, 0.8, 0.0, 100, 0.0);
  CHECK(degenerate.low == 0.3);
  CHECK(degenerate.high == 0.3);
  CHECK(normal_critical_value(0.95) == Approx(1.959963984540054).epsilon(1e-14));
  const auto ci = confidence_interval(0.5, 0.75, 0.0, 200, 0.95);
  const double half = 1.959963984540054 * std::sqrt(0.375 / 200.0);
  CHECK(ci.low == Approx(0.5 - half).epsilon(1e-13));
  CHECK(ci.high == Approx(0.5 + half).epsilon(1e-13));
  // p̂_β = 0.8 (1 - 0.5) = 0.4.
  CHECK_THROWS_AS(confidence_interval(0.5, 0.8, -1.0, 100, 0.95), TheoremConditionViolated);
  CHECK_THROWS_AS(normal_critical_value(1.0), DomainError);
}

TEST_CASE("series constant used by the deterministic bounds", "[asymptotics]") {
  for (double s : {1.25, 1.5, 1.75, 2.0, 3.0})
    CHECK(testing::zeta_series(s) == Approx(std::riemann_zeta(s)).epsilon(1e-12));
  CHECK(testing::zeta_series(2.0) == Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-13));
}

TEST_CASE("deterministic spacing bounds", "[asymptotics]") {
  const auto direct = spacing_bound_terms(7, 40, 0.5);
  const SpacingBoundTable table(60, 0.5);
  const auto fast = table.at(7, 40);
  CHECK(fast.c_i == direct.c_i);
  CHECK(fast.harmonic_gap == Approx(direct.harmonic_gap).epsilon(1e-12));
  CHECK(fast.d_ik == Approx(direct.d_ik).epsilon(1e-12));
  for (double a : {-2.0, 0.25})
    for (std::size_t k = 2; k <= 60; ++k)
      for (std::size_t i = 2; i <= k; ++i) {
        const auto d = spacing_bound_terms(i, k, a);
        const auto t = SpacingBoundTable(60, a).at(i, k);
        REQUIRE(t.harmonic_gap == Approx(d.harmonic_gap).epsilon(1e-10).margin(1e-14));
        REQUIRE(t.d_ik == Approx(d.d_ik).epsilon(1e-10).margin(1e-14));
      }
  CHECK(spacing_bound_terms(2, 2, 0.0).c_i == Approx(1.0 + 2.0 * std::log(0.5)));
  CHECK_THROWS_AS(spacing_bound_terms(2, 5, 1.0), DomainError);
  CHECK_THROWS_AS(spacing_bound_terms(1, 5, 0.5), IndexError);
  CHECK_THROWS_AS(spacing_bound_terms(6, 5, 0.5), IndexError);
  CHECK(testing::spacing_bound_violations(200, {-2.0, -1.0, -0.5, 0.25, 0.5, 0.75}) == 0);
}
