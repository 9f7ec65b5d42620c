#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pinchip/scaling.hpp"

using namespace pinchip::scaling;
using pinchip::PitchConditionViolated;

namespace {
WiringArchitecture lateral(double pw, double m = 1.0) { return {Access::lateral, pw, PitchProvenance::explicit_value, m}; }
WiringArchitecture vertical(double pw, double m = 1.0) {
  return {Access::vertical, pw, PitchProvenance::explicit_value, m};
}
} // namespace

TEST(BondPitch, SharedAndUnsharedGrounds) {
  EXPECT_NEAR(wire_pitch_from_bonds({18e-6, 10e-6, 3, true}), 56e-6, 1e-18);
  EXPECT_NEAR(wire_pitch_from_bonds({18e-6, 0.0, 1, false}), 18e-6, 1e-18);
  EXPECT_NEAR(wire_pitch_from_bonds({18e-6, 10e-6, 3, false}), 84e-6, 1e-18);
}

TEST(PitchCondition, Boundary) {
  EXPECT_TRUE(check_pitch_condition(56e-6, 500e-6));
  EXPECT_TRUE(check_pitch_condition(500e-6, 500e-6));
  EXPECT_FALSE(check_pitch_condition(1e-3, 500e-6));
}

TEST(Crossover, ClosedFormAndBisection) {
  EXPECT_NEAR(lateral_crossover_length(500e-6, 56e-6), 17.857142857e-3, 1e-12);
  EXPECT_NEAR(lateral_crossover_length(500e-6, 28e-6), 35.714285714e-3, 1e-12);
  EXPECT_NEAR(lateral_crossover_length(500e-6, 2000e-6), 500e-6, 1e-18);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pq(50e-6, 5e-3), pw(5e-6, 1e-3);
  for (int i = 0; i < 200; ++i) {
    const double q = pq(rng), w = pw(rng);
    EXPECT_NEAR(lateral_crossover_length(q, w) / oracle::crossover_bisection(q, w), 1.0, 1e-9);
  }
}

TEST(Crossover, AlgebraicConsistencyRandomized) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pq(10e-6, 10e-3), pw(1e-6, 5e-3);
  for (int i = 0; i < 1000; ++i) {
    const double q = pq(rng), w = pw(rng);
    const double l = lateral_crossover_length(q, w);
    const double nq = (l / q) * (l / q);
    const double nw = 4.0 * l / w;
    EXPECT_LT(std::abs(nq - nw) / nw, 1e-12);
  }
}

TEST(Lateral, WorkedExamples) {
  const auto r18 = lateral_scaling_report({500e-6, 18e-3}, lateral(56e-6));
  EXPECT_EQ(r18.qubit_count, 1296u);
  const auto r200 = lateral_scaling_report({500e-6, 200e-3}, lateral(56e-6));
  EXPECT_EQ(r200.wire_count, 14285u); // 4 * 200 mm / 56 um = 14285.71
  EXPECT_NEAR(r200.wire_count_exact, 14285.714285714, 1e-6);
  EXPECT_EQ(r200.limiting_factor, LimitingFactor::wire_count);
  const auto one = lateral_scaling_report({500e-6, 500e-6}, lateral(56e-6));
  EXPECT_EQ(one.qubit_count, 1u);
  ASSERT_TRUE(one.crossover_length.has_value());
}

TEST(Lateral, ExactCrossoverGivesBothRoundings) {
  const double l = lateral_crossover_length(500e-6, 56e-6);
  const auto r = lateral_scaling_report({500e-6, l}, lateral(56e-6));
  EXPECT_EQ(r.qubit_count, 1275u);
  EXPECT_NEAR(r.qubit_count_exact, 1275.51, 0.01);
}

TEST(Lateral, LimitingFactorFlipsAtCrossover) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pq(100e-6, 3e-3), pw(10e-6, 500e-6), frac(0.05, 0.95);
  for (int i = 0; i < 300; ++i) {
    const double q = pq(rng), w = pw(rng);
    const double l = oracle::crossover_bisection(q, w);
    const double below = std::max(q, l * frac(rng));
    const double above = l / frac(rng);
    if (below < l * (1 - 1e-9)) {
      EXPECT_EQ(lateral_scaling_report({q, below}, lateral(w)).limiting_factor, LimitingFactor::qubit_size);
    }
    EXPECT_EQ(lateral_scaling_report({q, above}, lateral(w)).limiting_factor, LimitingFactor::wire_count);
  }
}

TEST(Lateral, IntegersAreFloorsOfExactValues) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> pq(100e-6, 3e-3), side(1.0, 400.0), pw(10e-6, 500e-6);
  for (int i = 0; i < 500; ++i) {
    const double q = pq(rng);
    const auto r = lateral_scaling_report({q, q * side(rng)}, lateral(pw(rng)));
    EXPECT_LE(static_cast<double>(r.qubit_count), r.qubit_count_exact * (1 + 1e-9));
    EXPECT_GT(static_cast<double>(r.qubit_count) + 1.0, r.qubit_count_exact);
    EXPECT_LE(static_cast<double>(r.wire_count), r.wire_count_exact * (1 + 1e-9));
    EXPECT_GT(static_cast<double>(r.wire_count) + 1.0, r.wire_count_exact);
  }
}

TEST(Lateral, MonotoneInSideAndPitch) {
  std::uint64_t last = 0;
  for (double l = 1e-3; l < 100e-3; l += 0.7e-3) {
    const auto r = lateral_scaling_report({500e-6, l}, lateral(56e-6));
    EXPECT_GE(r.qubit_count, last);
    last = r.qubit_count;
  }
  std::uint64_t prev = ~0ull;
  for (double q = 100e-6; q < 2e-3; q += 37e-6) {
    const auto r = lateral_scaling_report({q, 50e-3}, lateral(56e-6));
    EXPECT_LE(r.qubit_count, prev);
    prev = r.qubit_count;
  }
}

TEST(Lateral, WiresPerQubitShiftsCrossover) {
  const auto r = lateral_scaling_report({500e-6, 10e-3}, lateral(56e-6, 2.0));
  EXPECT_NEAR(*r.crossover_length, 17.857142857e-3 / 2.0, 1e-12);
  EXPECT_EQ(r.limiting_factor, LimitingFactor::wire_count);
}

TEST(Vertical, WorkedExamples) {
  EXPECT_EQ(vertical_scaling_report({500e-6, 200e-3}, vertical(400e-6)).qubit_count, 160000u);
  EXPECT_EQ(vertical_scaling_report({3.5e-3, 200e-3}, vertical(400e-6)).qubit_count, 3265u);
  const auto r = vertical_scaling_report({500e-6, 200e-3}, vertical(400e-6));
  EXPECT_EQ(r.wire_count, 250000u);
  EXPECT_EQ(r.limiting_factor, LimitingFactor::qubit_size);
  EXPECT_FALSE(r.crossover_length.has_value());
}

TEST(Vertical, PitchConditionEnforced) {
  EXPECT_THROW(vertical_scaling_report({500e-6, 200e-3}, vertical(600e-6)), PitchConditionViolated);
  EXPECT_THROW(vertical_scaling_report({500e-6, 200e-3}, vertical(400e-6, 4.0)), PitchConditionViolated);
  EXPECT_NO_THROW(vertical_scaling_report({500e-6, 200e-3}, vertical(500e-6)));
}

TEST(Vertical, NeverWireLimitedAndQubitsBelowWires) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pq(100e-6, 3e-3), side(1.0, 300.0), ratio(0.05, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double q = pq(rng);
    const auto r = vertical_scaling_report({q, q * side(rng)}, vertical(q * ratio(rng)));
    EXPECT_EQ(r.limiting_factor, LimitingFactor::qubit_size);
    EXPECT_LE(r.qubit_count, r.wire_count);
  }
}

TEST(RequiredPitch, ExamplesAndInverse) {
  EXPECT_NEAR(required_pitch_for_full_chip(200e-3, 56e-6), 1.6733e-3, 1e-7);
  EXPECT_NEAR(required_pitch_for_full_chip(lateral_crossover_length(500e-6, 56e-6), 56e-6), 500e-6, 1e-15);
  // Numerical root of (l/p)^2 = 4 l / p_w for l = 100 mm.
  double lo = 1e-4, hi = 1e-2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((100e-3 / mid) * (100e-3 / mid) > 4.0 * 100e-3 / 56e-6 ? lo : hi) = mid;
  }
  EXPECT_NEAR(required_pitch_for_full_chip(100e-3, 56e-6), lo, 1e-12);
  EXPECT_NEAR(required_pitch_for_full_chip(100e-3, 56e-6), 1.183e-3, 1e-6);
}

TEST(Logical, FloorDivision) {
  EXPECT_EQ(logical_qubit_estimate(160000, 2000), 80u);
  EXPECT_EQ(logical_qubit_estimate(1234, 1), 1234u);
  EXPECT_EQ(logical_qubit_estimate(1999, 2000), 0u);
  EXPECT_THROW(logical_qubit_estimate(10, 0), pinchip::Error);
}
