#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pinchip/rfnet.hpp"

using namespace pinchip;
using namespace pinchip::rfnet;

namespace {

constexpr double c0 = 299792458.0;

double quarter_wave_frequency(double eps, double len) { return c0 / (4.0 * len * std::sqrt(eps)); }

void expect_matrix(const Abcd& m, oracle::cx a, oracle::cx b, oracle::cx c, oracle::cx d, double tol) {
  EXPECT_LE(std::abs(m.a - a), tol);
  EXPECT_LE(std::abs(m.b - b), tol);
  EXPECT_LE(std::abs(m.c - c), tol);
  EXPECT_LE(std::abs(m.d - d), tol);
}

MismatchOptions bare_pin(double eps) {
  MismatchOptions o;
  o.taper_length = 0.0;
  o.taper_segments = 0;
  o.pin_effective_permittivity = eps;
  return o;
}

} // namespace

TEST(ElementAbcd, ClosedForms) {
  const oracle::cx j(0, 1);
  expect_matrix(element_abcd(line(24.0, 3.0, 20e-3), 0.0), 1.0, 0.0, 0.0, 1.0, 1e-15);
  const double fq = quarter_wave_frequency(3.0, 20e-3);
  expect_matrix(element_abcd(line(24.0, 3.0, 20e-3), fq), 0.0, j * 24.0, j / 24.0, 0.0, 1e-12);
  expect_matrix(element_abcd(series(1.0), 7e9), 1.0, 1.0, 0.0, 1.0, 0.0);
  const double w = 2 * std::numbers::pi * 5e9;
  expect_matrix(element_abcd(shunt(1e-12), 5e9), 1.0, 0.0, j * w * 1e-12, 1.0, 1e-15);
}

TEST(Cascade, SingleElementAndHalfWave) {
  const double fq = quarter_wave_frequency(3.0, 20e-3);
  const std::vector<double> f{fq};
  const std::vector<NetworkElement> one{line(24.0, 3.0, 20e-3)};
  const auto n1 = cascade(one, f);
  const auto direct = element_abcd(one[0], fq);
  expect_matrix(n1.abcd[0], direct.a, direct.b, direct.c, direct.d, 0.0);
  const std::vector<NetworkElement> two{line(24.0, 3.0, 20e-3), line(24.0, 3.0, 20e-3)};
  expect_matrix(cascade(two, f).abcd[0], -1.0, 0.0, 0.0, -1.0, 1e-12);
}

TEST(Cascade, ThreeSegmentChainMatchesBruteForce) {
  const std::vector<NetworkElement> chain{line(24.0, 3.0, 7e-3), line(14.0, 3.0, 11e-3), line(24.0, 3.0, 5e-3)};
  const double f = 5e9;
  const auto net = cascade(chain, std::vector<double>{f});
  const auto ref = oracle::mul(oracle::mul(oracle::line(24.0, 3.0, 7e-3, f), oracle::line(14.0, 3.0, 11e-3, f)),
                               oracle::line(24.0, 3.0, 5e-3, f));
  expect_matrix(net.abcd[0], ref.a, ref.b, ref.c, ref.d, 1e-12);
}

TEST(Cascade, RejectsBadInput) {
  const std::vector<NetworkElement> none;
  EXPECT_THROW(cascade(none, std::vector<double>{1.0}), Error);
  const std::vector<NetworkElement> one{line(50.0, 1.0, 1e-3)};
  EXPECT_THROW(cascade(one, std::vector<double>{2.0, 1.0}), Error);
  EXPECT_THROW(cascade(one, std::vector<double>{-1.0}), Error);
  const std::vector<NetworkElement> bad{line(-5.0, 1.0, 1e-3)};
  EXPECT_THROW(cascade(bad, std::vector<double>{1.0}), Error);
  const std::vector<NetworkElement> neg_att{attenuator(-3.0)};
  EXPECT_THROW(cascade(neg_att, std::vector<double>{1.0}), Error);
}

TEST(SParameters, MatchedLineAndAttenuator) {
  const auto f = numeric::linspace(0.0, 10e9, 51);
  const std::vector<NetworkElement> matched{line(50.0, 3.0, 20e-3)};
  for (const auto& s : to_s_parameters(cascade(matched, f)).s) {
    EXPECT_LT(std::abs(s.s11), 1e-12);
    EXPECT_NEAR(std::abs(s.s21), 1.0, 1e-12);
  }
  const std::vector<NetworkElement> pad{attenuator(20.0)};
  const auto r = to_s_parameters(cascade(pad, std::vector<double>{1e9}));
  EXPECT_NEAR(std::abs(r.s[0].s21), 0.1, 1e-12);
  EXPECT_LT(std::abs(r.s[0].s11), 1e-12);
}

TEST(SParameters, QuarterWaveTransformer) {
  const double fq = quarter_wave_frequency(3.0, 20e-3);
  const std::vector<NetworkElement> q{line(24.0, 3.0, 20e-3)};
  const auto r = to_s_parameters(cascade(q, std::vector<double>{fq}));
  EXPECT_NEAR(std::abs(r.s[0].s11), oracle::quarter_wave_s11(24.0, 50.0), 1e-9);
  EXPECT_NEAR(std::abs(r.s[0].s11), 0.626, 1e-3);
}

TEST(SParameters, UnequalReferencesAreMatchedByIdealTransformerLine) {
  // A quarter-wave line of sqrt(Z1 Z2) matches Z1 to Z2 at its design frequency.
  const double z1 = 50.0, z2 = 12.5;
  const double fq = quarter_wave_frequency(2.0, 10e-3);
  const std::vector<NetworkElement> q{line(std::sqrt(z1 * z2), 2.0, 10e-3)};
  const auto r = to_s_parameters(cascade(q, std::vector<double>{fq}, z1, z2));
  EXPECT_LT(std::abs(r.s[0].s11), 1e-12);
  EXPECT_LT(std::abs(r.s[0].s22), 1e-12);
  EXPECT_NEAR(std::abs(r.s[0].s21), 1.0, 1e-12);
}

TEST(Properties, LosslessCascadesConserveEnergy) {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> z(5.0, 150.0), eps(1.0, 12.0), len(0.1e-3, 30e-3), lc(0.0, 2e-9),
      cap(0.0, 1e-12);
  std::uniform_int_distribution<int> count(1, 8), kind(0, 2);
  const auto f = numeric::linspace(0.0, 10e9, 101);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<NetworkElement> chain;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      switch (kind(rng)) {
        case 0: chain.push_back(line(z(rng), eps(rng), len(rng))); break;
        case 1: chain.push_back(series(0.0, lc(rng))); break;
        default: chain.push_back(shunt(cap(rng))); break;
      }
    }
    const auto net = cascade(chain, f);
    const auto r = to_s_parameters(net);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto& s = r.s[i];
      EXPECT_NEAR(std::norm(s.s11) + std::norm(s.s21), 1.0, 1e-6);
      EXPECT_LT(std::abs(net.abcd[i].det() - 1.0), 1e-9);
      EXPECT_LT(std::abs(s.s21 - s.s12), 1e-9);
    }
    EXPECT_NEAR(std::abs(r.s[0].s21), 1.0, 1e-12); // DC passes through lines and reactances
  }
}

TEST(Mismatch, FullyMatchedPathReflectsNothing) {
  const auto rep = mismatch_report(20e-3, 50.0, 50.0);
  EXPECT_LT(rep.worst_s11, 1e-12);
  EXPECT_EQ(rep.response.frequencies.size(), 1001u);
  EXPECT_EQ(rep.response.frequencies.front(), 0.0);
  EXPECT_EQ(rep.response.frequencies.back(), 10e9);
}

TEST(Mismatch, BarePinMatchesInterferenceOracle) {
  const auto rep = mismatch_report(20e-3, 24.0, 50.0, {0.0, 10e9}, bare_pin(3.0));
  ASSERT_EQ(rep.path.size(), 1u);
  for (std::size_t i = 0; i < rep.response.frequencies.size(); ++i) {
    const auto [s11, s21] = oracle::line_between_ports(24.0, 50.0, 3.0, 20e-3, rep.response.frequencies[i]);
    EXPECT_LT(std::abs(rep.response.s[i].s11 - s11), 1e-9);
    EXPECT_LT(std::abs(rep.response.s[i].s21 - s21), 1e-9);
  }
}

TEST(Mismatch, HalvingPinLengthDoublesFirstMinimum) {
  auto first_minimum = [](double len) {
    const auto rep = mismatch_report(len, 24.0, 50.0, {0.0, 10e9}, [] {
      auto o = bare_pin(3.0);
      o.points = 20001;
      return o;
    }());
    const auto& s = rep.response.s;
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
      if (std::abs(s[i].s11) <= std::abs(s[i - 1].s11) && std::abs(s[i].s11) < std::abs(s[i + 1].s11))
        return rep.response.frequencies[i];
    return -1.0;
  };
  const double f20 = first_minimum(20e-3);
  const double f10 = first_minimum(10e-3);
  EXPECT_NEAR(f20, c0 / (2.0 * 20e-3 * std::sqrt(3.0)), 1e6);
  EXPECT_NEAR(f10 / f20, 2.0, 1e-3);
}

TEST(Mismatch, GridRefinementStable) {
  MismatchOptions coarse;
  MismatchOptions fine;
  fine.points = 2001;
  const double a = mismatch_report(20e-3, 14.0, 50.0, {}, coarse).worst_s11;
  const double b = mismatch_report(20e-3, 14.0, 50.0, {}, fine).worst_s11;
  EXPECT_LT(std::abs(a - b) / b, 1e-3);
}

TEST(Mismatch, BandLimitsEnforced) {
  EXPECT_THROW(mismatch_report(20e-3, 24.0, 50.0, {0.0, 12e9}), OutOfRange);
  EXPECT_THROW(mismatch_report(20e-3, 24.0, 50.0, {5e9, 1e9}), OutOfRange);
}

TEST(Mismatch, TaperReducesWorstReflection) {
  MismatchOptions none = bare_pin(3.0);
  MismatchOptions tapered;
  tapered.taper_length = 10e-3;
  tapered.taper_segments = 32;
  tapered.feed_effective_permittivity = 3.0;
  const double r0 = mismatch_report(20e-3, 14.0, 50.0, {4e9, 10e9}, none).worst_s11;
  const double r1 = mismatch_report(20e-3, 14.0, 50.0, {4e9, 10e9}, tapered).worst_s11;
  EXPECT_LT(r1, r0);
}

TEST(Export, CsvAndTouchstoneLayout) {
  const std::vector<NetworkElement> q{line(24.0, 3.0, 20e-3)};
  const auto r = to_s_parameters(cascade(q, numeric::linspace(1e9, 2e9, 3)));
  std::ostringstream csv;
  write_csv(csv, r);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "frequency_Hz,s11_re,s11_im,s21_re,s21_im,s11_dB,s21_dB");
  int rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  EXPECT_EQ(rows, 3);

  std::ostringstream ts;
  write_touchstone(ts, r);
  EXPECT_NE(ts.str().find("# Hz S RI R 50"), std::string::npos);
  std::istringstream tl(ts.str());
  int data = 0;
  for (std::string l; std::getline(tl, l);) {
    if (l.empty() || l[0] == '!' || l[0] == '#') continue;
    std::istringstream fields(l);
    int n = 0;
    for (double v; fields >> v;) ++n;
    EXPECT_EQ(n, 9);
    ++data;
  }
  EXPECT_EQ(data, 3);

  const auto unequal = to_s_parameters(cascade(q, std::vector<double>{1e9}, 50.0, 25.0));
  std::ostringstream ts2;
  write_touchstone(ts2, unequal);
  EXPECT_NE(ts2.str().find("[Version] 2.0"), std::string::npos);
  EXPECT_NE(ts2.str().find("[Reference] 50 25"), std::string::npos);
}
