#include <gtest/gtest.h>

#include <numbers>

#include "helpers.hpp"

using namespace chowla;
using testutil::to_oracle;

TEST(Indicator, Values) {
  const ExactPoly f = indicator(IntSet{-1, 1});
  EXPECT_NEAR(f.eval(0.0).real(), 2.0, 1e-14);
  EXPECT_NEAR(f.eval(0.5).real(), -2.0, 1e-14);
  EXPECT_NEAR(std::abs(f.eval(0.25)), 0.0, 1e-14);
  EXPECT_TRUE(indicator(IntSet{}).is_zero());
  const ExactPoly g = indicator(IntSet{-2, -1, 1, 2});
  EXPECT_NEAR(g.eval(0.0).real(), 4.0, 1e-14);
  EXPECT_NEAR(g.eval(0.5).real(), 0.0, 1e-14);
  EXPECT_EQ(g.degree(), 2);
  EXPECT_TRUE(g.is_real());
  EXPECT_TRUE(g.mean_zero());
}

TEST(Convolve, CubeOfTwoMinusI) {
  ExactPoly::map_type m{{7, GaussInt(2, -1)}};
  const ExactPoly f(m);
  EXPECT_EQ(conv_pow(f, 3).coeff(7), GaussInt(2, -11));
  EXPECT_EQ(conv_pow(f, 1), f);
}

TEST(Convolve, IndicatorsIntersect) {
  const ExactPoly f = convolve(indicator(IntSet{1, 2, 3}), indicator(IntSet{2, 3, 4}));
  EXPECT_EQ(f, indicator(IntSet{2, 3}));
}

TEST(Eval, RandomAgainstDirectSum) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexPoly f = random_real_poly(rng, 40);
    for (double x : {0.0, 0.123, 0.5, 0.987654}) {
      EXPECT_NEAR(std::abs(f.eval(x) - oracle::eval(to_oracle(f), x)), 0.0, 1e-10);
    }
  }
}

TEST(Samples, MatchPointEvaluation) {
  Rng rng(9);
  const ComplexPoly f = random_real_poly(rng, 20);
  const fft::cvec s = f.samples(64);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_NEAR(std::abs(s[j] - f.eval(j / 64.0)), 0.0, 1e-11);
}

TEST(Norms, ZeroAndCosine) {
  const Norms z = norms(ComplexPoly{});
  EXPECT_EQ(z.l1, 0.0);
  EXPECT_EQ(z.l2, 0.0);
  EXPECT_EQ(z.linf, 0.0);
  const Norms c = norms(indicator(IntSet{-1, 1}));
  EXPECT_NEAR(c.l1, 4.0 / std::numbers::pi, 1e-9);
  EXPECT_NEAR(c.l2, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(c.linf, 2.0, 1e-12);
}

TEST(Norms, L1AgainstMidpointRule) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const ExactPoly f = random_indicator(rng, 8);
    EXPECT_NEAR(norms(f).l1, oracle::l1_midpoint(to_oracle(f)), 1e-6);
  }
}

TEST(Parseval, AgainstQuadrature) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexPoly f = random_real_poly(rng, 30);
    const ComplexPoly g = random_real_poly(rng, 30);
    const std::size_t m = 128;
    const fft::cvec fs = f.samples(m), gs = g.samples(m);
    cplx q{};
    for (std::size_t j = 0; j < m; ++j) q += fs[j] * std::conj(gs[j]);
    q /= static_cast<double>(m);
    const cplx p = parseval_inner(f, g);
    EXPECT_NEAR(std::abs(p - q), 0.0, 1e-8 * std::max(1.0, std::abs(p)));
  }
}

TEST(MinNorm, Examples) {
  const MinCertificate c = min_norm(indicator(IntSet{-1, 1}), 1e-10);
  EXPECT_NEAR(c.lower, -2.0, 1e-9);
  EXPECT_NEAR(c.argmin, 0.5, 1e-6);
  EXPECT_NEAR(c.norm_upper(), 2.0, 1e-9);
  // 2cos u + 2cos 2u = 4c² + 2c - 2 is minimal at c = -1/4.
  const MinCertificate d = min_norm(indicator(IntSet{-2, -1, 1, 2}), 1e-10);
  EXPECT_NEAR(d.lower, -2.25, 1e-9);
  EXPECT_LE(d.radius, 1e-10);
  EXPECT_GE(min_norm(indicator(sidon_difference_construction(3).set())).lower, -3.0 - 1e-9);
}

TEST(MinNorm, BracketContainsDenseEstimate) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const ComplexPoly f = random_real_poly(rng, 24);
    const MinCertificate c = min_norm(f, 1e-9);
    const double est = oracle::dense_min(to_oracle(f));
    EXPECT_LE(c.lower, est + 1e-9);
    EXPECT_GE(c.upper(), est - 1e-7);  // the estimate is not itself certified
    EXPECT_LE(c.radius, 1e-9);
    EXPECT_NEAR(f.eval(c.argmin).real(), c.upper(), 1e-9);
  }
}

TEST(MinNorm, NonMeanZeroIsFlagged) {
  ExactPoly::map_type m{{0, GaussInt(3)}, {1, GaussInt(1)}, {-1, GaussInt(1)}};
  const MinCertificate c = min_norm(ExactPoly(m));
  EXPECT_FALSE(c.mean_zero);
  EXPECT_NEAR(c.lower, 1.0, 1e-9);
}

TEST(TrigPoly, ShiftConjAndJsonRoundTrip) {
  const ExactPoly f = indicator(IntSet{-2, 3});
  EXPECT_EQ(f.shifted(1), indicator(IntSet{-1, 4}));
  ExactPoly::map_type m{{2, GaussInt(1, 2)}};
  EXPECT_EQ(ExactPoly(m).conj_coeffs().coeff(2), GaussInt(1, -2));
  const ComplexPoly g = (indicator(IntSet{-1, 1})).to_complex();
  EXPECT_EQ(complex_poly_from_json(to_json_poly(g)), g);
  EXPECT_EQ(exact_poly_from_json(to_json_poly(f)), f);
}

TEST(TrigPoly, DerivativeBoundDominatesSlope) {
  Rng rng(13);
  const ComplexPoly f = random_real_poly(rng, 16);
  const double lip = f.derivative_bound(1);
  for (int j = 0; j < 1000; ++j) EXPECT_LE(std::abs(f.eval_derivative(j / 1000.0)), lip + 1e-9);
}
