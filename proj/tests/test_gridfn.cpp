#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

#include "helpers.hpp"

using namespace chowla;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Sample, CosineOnEightPoints) {
  const GridFn g = sample(indicator(IntSet{-1, 1}), 8);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(g[j].real(), 2.0 * std::cos(2.0 * std::numbers::pi * j / 8.0), 1e-14);
  EXPECT_TRUE(g.is_real());
  EXPECT_EQ(sample(ComplexPoly{}, 16).max_abs(), 0.0);
}

TEST(Sample, GridTooSmallOrNotPowerOfTwo) {
  EXPECT_EQ(code_of([] { sample(indicator(IntSet{-4, 4}), 8); }), ErrorCode::GridTooSmall);
  EXPECT_EQ(code_of([] { sample(indicator(IntSet{-1, 1}), 12); }), ErrorCode::GridTooSmall);
}

TEST(Sample, RoundTripRecoversCoefficients) {
  Rng rng(1);
  const ComplexPoly f = random_real_poly(rng, 16);
  const ComplexPoly back = sample(f, 64).to_poly(1e-12);
  double err = 0.0;
  for (Int m = -32; m <= 32; ++m) err = std::max(err, std::abs(f.coeff(m) - back.coeff(m)));
  EXPECT_LT(err, 1e-10);
}

TEST(PosNeg, Examples) {
  const PosNeg c = pos_neg_split(GridFn::from_real({-1, -1, -1, -1}));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(c.plus[j].real(), 0.0);
    EXPECT_EQ(c.minus[j].real(), 1.0);
  }
  const PosNeg s = pos_neg_split(sample(indicator(IntSet{-1, 1}), 4));
  const std::vector<double> plus{2, 0, 0, 0}, minus{0, 0, 2, 0};
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(s.plus[j].real(), plus[j], 1e-15);
    EXPECT_NEAR(s.minus[j].real(), minus[j], 1e-15);
  }
}

TEST(PosNeg, IdentitiesExact) {
  Rng rng(3);
  const GridFn g = sample(random_real_poly(rng, 30), 128);
  const PosNeg s = pos_neg_split(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_EQ(s.plus[j].real() - s.minus[j].real(), g[j].real());
    EXPECT_EQ(s.plus[j].real() + s.minus[j].real(), std::abs(g[j].real()));
    EXPECT_GE(s.plus[j].real(), 0.0);
    EXPECT_GE(s.minus[j].real(), 0.0);
  }
  EXPECT_EQ(code_of([&] { pos_neg_split(cplx(0, 1) * g); }), ErrorCode::NotReal);
}

TEST(CircConvolve, ConstantOneGivesMean) {
  Rng rng(5);
  const GridFn g = sample(random_real_poly(rng, 10) + ComplexPoly::constant(3.0), 32);
  const GridFn one = GridFn::from_real(std::vector<double>(32, 1.0));
  const GridFn c = circ_convolve(g, one);
  for (std::size_t j = 0; j < 32; ++j) EXPECT_NEAR(std::abs(c[j] - g.mean()), 0.0, 1e-12);
}

TEST(CircConvolve, NonBandlimitedAgainstDirectSum) {
  Rng rng(7);
  const GridFn g = sample(random_real_poly(rng, 40), 256).abs();
  const GridFn h = sample(random_real_poly(rng, 60), 256);
  const GridFn c = circ_convolve(g, h);
  const auto direct = oracle::circ_conv(g.samples(), h.samples());
  double err = 0.0;
  for (std::size_t j = 0; j < 256; ++j) err = std::max(err, std::abs(c[j] - direct[j]));
  EXPECT_LT(err, 1e-12);
  EXPECT_EQ(code_of([&] { circ_convolve(g, GridFn::zeros(128)); }), ErrorCode::GridMismatch);
}

TEST(GridFn, BinaryRoundTrip) {
  Rng rng(8);
  const GridFn g = sample(random_real_poly(rng, 10), 32).modulated(3);
  std::stringstream ss;
  g.write_binary(ss);
  const GridFn h = GridFn::read_binary(ss);
  ASSERT_EQ(h.size(), g.size());
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(h[j], g[j]);
}

TEST(T1T2, CosineSplit) {
  const SplitT s = t1_t2_split(SymSet::make({-1, 1}), 2.0, 64);
  EXPECT_TRUE(s.report.ok());
  for (std::size_t j = 0; j < 64; ++j) EXPECT_GE(s.t2[j].real(), -2.0 - 1e-12);
}

TEST(T1T2, SidonPassesAndKTooSmall) {
  const SymSet a = sidon_difference_construction(3);
  EXPECT_TRUE(t1_t2_split(a, 3.0, 256).report.ok());
  EXPECT_EQ(code_of([&] { t1_t2_split(a, 0.5, 256); }), ErrorCode::KTooSmall);
}

TEST(Q1Q2, SidonInputs) {
  for (std::size_t m : {3, 4, 5}) {
    const SymSet a = sidon_difference_construction(m);
    const Int t = max_overlap_shift(a.set()).first;
    const double k = min_norm(indicator(a.set())).norm_upper();
    const QDecomposition q = q1_q2_decompose(a, t, k, decomposition_grid(a, t));
    EXPECT_TRUE(q.report.ok()) << json(q.report).dump();
    EXPECT_LE(q.report.extra["observed_c2"].get<double>(), 64.0);
    EXPECT_LE(q.report.extra["observed_c1"].get<double>(), 4.0);
  }
}

TEST(Q1Q2, EmptyBtIsVacuous) {
  const SymSet a = SymSet::make({-1, 1});
  const QDecomposition q = q1_q2_decompose(a, 5, 2.0, 256);
  EXPECT_TRUE(q.report.vacuous);
  EXPECT_EQ(q.q1.max_abs(), 0.0);
  EXPECT_EQ(q.q2.max_abs(), 0.0);
}

TEST(Q1Q2, RandomSumIdentity) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const SymSet a = random_symmetric(rng, 12);
    const auto [t, ov] = max_overlap_shift(a.set());
    if (t == 0) continue;
    const double k = min_norm(indicator(a.set())).norm_upper();
    const QDecomposition q = q1_q2_decompose(a, t, k, decomposition_grid(a, t));
    ASSERT_FALSE(q.report.subchecks.empty() && !q.report.vacuous);
    for (const auto& s : q.report.subchecks) {
      if (s.name == "sum_identity") {
        EXPECT_TRUE(s.pass) << s.lhs;
      }
    }
  }
}

TEST(Q1Q2, GridTooSmall) {
  const SymSet a = sidon_difference_construction(3);
  EXPECT_EQ(code_of([&] { q1_q2_decompose(a, 1, 3.0, 8); }), ErrorCode::GridTooSmall);
}
