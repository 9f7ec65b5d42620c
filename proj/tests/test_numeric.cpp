#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pinchip/numeric.hpp"

namespace nm = pinchip::numeric;

TEST(EllipticK, ZeroModulusIsHalfPi) { EXPECT_NEAR(nm::ellint_k(0.0), std::numbers::pi / 2.0, 1e-12); }

TEST(EllipticK, MatchesQuadratureOracle) {
  for (double k : {0.05, 0.2, 0.4545, 0.6, 0.8, 0.95, 0.99}) {
    const double ref = oracle::elliptic_k(k);
    EXPECT_NEAR(nm::ellint_k(k) / ref, 1.0, 1e-10) << "k=" << k;
  }
}

TEST(EllipticK, RejectsModulusOutsideRange) {
  EXPECT_THROW(nm::ellint_k(1.0), std::domain_error);
  EXPECT_THROW(nm::ellint_k(-0.1), std::domain_error);
}

TEST(EllipticK, RatioComplementIsInverseUnderSwap) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double k = u(rng);
    const double kp = std::sqrt(1.0 - k * k);
    EXPECT_NEAR(nm::ellint_k_ratio_complement(k) * nm::ellint_k_ratio_complement(kp), 1.0, 1e-12);
  }
}

TEST(Linspace, EndpointsAndCount) {
  const auto v = nm::linspace(200e-6, 300e-6, 11);
  ASSERT_EQ(v.size(), 11u);
  EXPECT_EQ(v.front(), 200e-6);
  EXPECT_EQ(v.back(), 300e-6);
  EXPECT_NEAR(v[5], 250e-6, 1e-18);
  EXPECT_EQ(nm::linspace(1.0, 2.0, 1), std::vector<double>{1.0});
  EXPECT_TRUE(nm::linspace(1.0, 2.0, 0).empty());
}

TEST(FloorCount, SnapsRepresentationNoiseOnly) {
  EXPECT_EQ(nm::floor_count(36.0 * (1 + 1e-15)), 36u);
  EXPECT_EQ(nm::floor_count(36.0 * (1 - 1e-15)), 36u);
  EXPECT_EQ(nm::floor_count(1275.51), 1275u);
  EXPECT_EQ(nm::floor_count(14285.714), 14285u);
  EXPECT_EQ(nm::floor_count(0.999), 0u);
  EXPECT_EQ(nm::floor_count(-3.0), 0u);
}

TEST(AdaptiveTrapezoid, PolynomialAndExponential) {
  const auto r = nm::adaptive_trapezoid([](double x) { return x * x; }, 0.0, 3.0, 1e-10);
  EXPECT_NEAR(r.value, 9.0, 1e-8);
  const auto e = nm::adaptive_trapezoid([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(e.value, std::exp(1.0) - 1.0, 1e-8);
  EXPECT_GT(e.evaluations, 2);
  EXPECT_EQ(nm::adaptive_trapezoid([](double) { return 1.0; }, 2.0, 2.0, 1e-9).value, 0.0);
}
