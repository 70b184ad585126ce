#include <gtest/gtest.h>

#include <numbers>

#include "helpers.hpp"

using namespace chowla;
using testutil::to_oracle;

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

const ExactPoly kCos = indicator(IntSet{-1, 1});

SymSet ap_set(Int k) {
  std::vector<Int> v;
  for (Int i = 1; i <= k; ++i) v.push_back(i);
  return SymSet::from_positive(IntSet(v));
}

}  // namespace

// Calculus inequalities.

TEST(MinToL1, ZeroAndCosine) {
  const LemmaReport z = check_min_to_l1(ExactPoly{});
  EXPECT_TRUE(z.ok());
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 0.0);
  const LemmaReport c = check_min_to_l1(kCos);
  EXPECT_NEAR(c.lhs, 4.0 / std::numbers::pi, 1e-9);
  EXPECT_NEAR(c.rhs, 4.0, 1e-9);
}

TEST(MinToL1, RejectsNonRealAndNonzeroMean) {
  ExactPoly::map_type m{{1, GaussInt(1)}};
  EXPECT_EQ(code_of([&] { check_min_to_l1(ExactPoly(m)); }), ErrorCode::NotRealValued);
  ExactPoly::map_type n{{0, GaussInt(1)}};
  EXPECT_EQ(code_of([&] { check_min_to_l1(ExactPoly(n)); }), ErrorCode::NotMeanZero);
}

TEST(MinToL1, RandomSymmetricSets) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const SymSet a = random_symmetric(rng, 15);
    EXPECT_TRUE(check_min_to_l1(indicator(a.set())).ok());
  }
}

TEST(ConvMin, CosineClosedForm) {
  const LemmaReport r = check_conv_min(kCos, kCos);
  EXPECT_NEAR(r.lhs, 2.0, 1e-9);
  EXPECT_NEAR(r.rhs, 8.0 / std::numbers::pi, 1e-8);
  EXPECT_TRUE(r.ok());
  const LemmaReport z = check_conv_min(kCos, ExactPoly{});
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_TRUE(z.ok());
}

TEST(KConv, Cosine) {
  const LemmaReport r = check_kconv(kCos, kCos);
  EXPECT_NEAR(r.lhs, 2.0, 1e-9);
  EXPECT_NEAR(r.rhs, 4.0, 1e-9);
  EXPECT_TRUE(r.ok());
}

TEST(Calculus, RandomPairs) {
  Rng rng(37);
  std::uniform_int_distribution<Int> deg(1, 64);
  for (int trial = 0; trial < 60; ++trial) {
    const ComplexPoly f = random_real_poly(rng, deg(rng));
    const ComplexPoly g = random_real_poly(rng, deg(rng));
    EXPECT_TRUE(check_conv_min(f, g).ok());
    EXPECT_TRUE(check_kconv(f, g).ok());
  }
}

// Additive lemmas.

TEST(Roth, SidonAndVacuous) {
  const SymSet a = sidon_difference_construction(4);
  const double k = min_norm(indicator(a.set())).norm_upper();
  const LemmaReport r = check_roth(a, a.set(), k);
  // |A| = 12 < 2K² here, so the gate applies.
  EXPECT_EQ(r.vacuous, 12.0 < 2.0 * k * k);
  EXPECT_TRUE(r.ok());
  const LemmaReport small = check_roth(a, IntSet{1, 2}, k);
  EXPECT_TRUE(small.vacuous);
  EXPECT_EQ(small.extra["vacuous_reason"], "BTooSmall");
}

TEST(Roth, SharpFormAlwaysChecked) {
  // A long progression has K far above √(|A|/2), so the gate applies, but the
  // unrearranged inequality is still verified against the exact pair count.
  const SymSet a = ap_set(40);
  const double k = min_norm(indicator(a.set())).norm_upper();
  const LemmaReport r = check_roth(a, a.set(), k);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.subchecks.size(), 1u);
  EXPECT_EQ(r.subchecks[0].lhs, static_cast<double>(oracle::pair_energy(to_oracle(a.set()), to_oracle(a.set()))));
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const SymSet s = random_symmetric(rng, 12);
    const double ks = min_norm(indicator(s.set())).norm_upper();
    EXPECT_TRUE(check_roth(s, s.set(), ks).ok());
  }
}

TEST(Roth, Errors) {
  const SymSet a = SymSet::make({-1, 1});
  EXPECT_EQ(code_of([&] { check_roth(a, IntSet{2}, 2.0); }), ErrorCode::BNotSubset);
  EXPECT_EQ(code_of([&] { check_roth(a, a.set(), 1.0); }), ErrorCode::KTooSmall);
}

TEST(Ruzsa, Witnesses) {
  const SymSet a = ap_set(10);
  const LemmaReport thin = check_ruzsa_witness(a, IntSet{1, 2, 3}, IntSet{0}, 1);
  EXPECT_TRUE(thin.ok());
  EXPECT_NEAR(thin.rhs, 0.5, 1e-15);  // min(|U|, |V|) = 1
  const LemmaReport bal = check_ruzsa_witness(a, IntSet{4, 5, 6}, IntSet{1, 2, 3}, 1);
  EXPECT_TRUE(bal.ok());
  EXPECT_NEAR(bal.rhs, 0.5 * std::sqrt(3.0), 1e-15);
  EXPECT_TRUE(check_ruzsa_witness(a, IntSet{}, IntSet{1}, 1).vacuous);
  EXPECT_EQ(code_of([&] { check_ruzsa_witness(a, IntSet{10}, IntSet{0}, 1); }), ErrorCode::WitnessInvalid);
  EXPECT_EQ(code_of([&] { check_ruzsa_witness(a, IntSet{1}, IntSet{0}, 0); }), ErrorCode::ZeroShift);
}

TEST(Ruzsa, ApWitnessOnRandomApRichSets) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<Int> len(4, 20), d(1, 5);
    const Int l = len(rng), step = d(rng);
    std::vector<Int> pos;
    for (Int i = 1; i <= l; ++i) pos.push_back(i * step);
    const IntSet extra = random_symmetric(rng, 6, 80).positive_half();
    const SymSet a = SymSet::from_positive(IntSet(pos) | extra);
    const RuzsaWitness w = ap_witness(a);
    ASSERT_NE(w.d, 0);
    EXPECT_TRUE(check_ruzsa_witness(a, w.u, w.v, w.d).ok());
  }
}

TEST(ApBound, Examples) {
  const LemmaReport r12 = check_ap_bound(ap_set(12));
  EXPECT_TRUE(r12.ok());
  EXPECT_EQ(r12.lhs, 12.0);  // {1..12} and the odd numbers in [-11, 11] both have 12 terms
  const LemmaReport r2 = check_ap_bound(SymSet::make({-1, 1}));
  EXPECT_EQ(r2.lhs, 2.0);
  EXPECT_NEAR(r2.rhs, 16.0 * 4.0, 1e-6);
  for (std::size_t m = 2; m <= 8; ++m) EXPECT_TRUE(check_ap_bound(sidon_difference_construction(m)).ok());
}

TEST(L1Bound, Examples) {
  EXPECT_TRUE(check_l1_bound(SymSet::make({-1, 1}), 1).ok());
  for (std::size_t m = 2; m <= 6; ++m) {
    const SymSet a = sidon_difference_construction(m);
    EXPECT_TRUE(check_l1_bound(a, max_overlap_shift(a.set()).first).ok());
  }
}

TEST(L1Bound, Random) {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const SymSet a = random_symmetric(rng, 10);
    std::uniform_int_distribution<Int> td(1, a.degree());
    EXPECT_TRUE(check_l1_bound(a, td(rng)).ok());
  }
}

TEST(Holder, PairSetAndOracle) {
  const SymSet a = SymSet::make({-1, 1});
  const LemmaReport r = check_holder_energy(a, norms(indicator(a.set())).l1 * 1.001);
  EXPECT_EQ(r.extra["energy"].get<double>(), 6.0);
  EXPECT_TRUE(r.ok());
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const SymSet b = random_symmetric(rng, 8);
    const LemmaReport s = check_holder_energy(b, norms(indicator(b.set())).l1 * 1.001);
    EXPECT_EQ(s.extra["energy"].get<double>(), static_cast<double>(oracle::quartic_energy(to_oracle(b.set()))));
    EXPECT_TRUE(s.ok());
  }
  EXPECT_EQ(code_of([&] { check_holder_energy(a, 0.1); }), ErrorCode::PreconditionViolated);
}

// The cube pipeline.

TEST(FtGt, CoefficientsAndNorm) {
  for (std::size_t m : {3, 4, 5}) {
    const SymSet a = sidon_difference_construction(m);
    const Int t = max_overlap_shift(a.set()).first;
    const FtGt fg = build_ft_gt(a, t);
    EXPECT_TRUE(fg.report.ok()) << json(fg.report).dump();
    // Coefficient oracle: 2·1_A(m) - i·1_A(m - t) + i·1_A(m + t).
    const oracle::Set s = to_oracle(a.set());
    for (Int x = -a.degree() - std::abs(t); x <= a.degree() + std::abs(t); ++x) {
      const GaussInt want(2 * static_cast<Int>(s.count(x)),
                          static_cast<Int>(s.count(x + t)) - static_cast<Int>(s.count(x - t)));
      ASSERT_EQ(fg.f.coeff(x), want) << x;
      ASSERT_EQ(fg.g.coeff(x), want.conj()) << x;
    }
  }
}

TEST(Cube, SmallAndSidon) {
  EXPECT_TRUE(check_cube_inequality(SymSet::make({-1, 1}), 3).ok());
  const SymSet a = sidon_difference_construction(4);
  const LemmaReport r = check_cube_inequality(a, max_overlap_shift(a.set()).first);
  EXPECT_TRUE(r.ok()) << json(r).dump();
  ASSERT_TRUE(r.observed_min_constant.has_value());
  EXPECT_LE(*r.observed_min_constant, 128.0);
}

TEST(Cube, ExactCoefficientsRandom) {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const SymSet a = random_symmetric(rng, 10);
    std::uniform_int_distribution<Int> td(1, a.degree());
    const Int t = td(rng);
    const FtGt fg = build_ft_gt(a, t);
    const ExactPoly f3 = conv_pow(fg.f, 3);
    const oracle::Derived d = oracle::derived(to_oracle(a.set()), t);
    for (const auto& [m, c] : f3.coeffs()) {
      GaussInt want;
      if (d.b_t.count(m)) want = GaussInt(2, -11);
      else if (d.b_t.count(-m)) want = GaussInt(2, 11);
      else if (d.d_t.count(m)) want = GaussInt(8);
      else if (d.c_t.count(m)) want = GaussInt(0, 1);  // (-i)³ = i
      else if (d.c_t.count(-m)) want = GaussInt(0, -1);
      ASSERT_EQ(c, want) << "m=" << m;
    }
  }
}

TEST(HhTrick, ConstructedInstance) {
  const IntSet b{-1, 1};
  const double c = 0.5;
  const ComplexPoly p1 = cplx(1.0 + c) * indicator<cplx>(b);
  const ComplexPoly p2 = indicator<cplx>(b);
  const double l = certified_l(p1, p2) + 1.0;
  const LemmaReport r = check_hh_trick(p1, p2, b, c, l);
  EXPECT_TRUE(r.ok()) << json(r).dump();
  EXPECT_TRUE(check_hh_trick(p1, p2, IntSet{}, c, l).vacuous);
  EXPECT_EQ(code_of([&] { check_hh_trick(p1, p2, b, c, 0.0); }), ErrorCode::HypothesisFailed);
  EXPECT_EQ(code_of([&] { check_hh_trick(p1, p2, b, 1.0, l); }), ErrorCode::HypothesisFailed);
}

TEST(HhTrick, CubePipelineInstances) {
  for (std::size_t m : {3, 4, 5}) {
    const SymSet a = sidon_difference_construction(m);
    const Int t = max_overlap_shift(a.set()).first;
    const double k = min_norm(indicator(a.set())).norm_upper();
    const HhInstance h = cube_hh_instance(a, t, k);
    const LemmaReport r = check_hh_trick(h.p1, h.p2, h.b, h.c, h.l);
    EXPECT_TRUE(r.ok()) << json(r).dump();
  }
}

TEST(XBounds, SidonAndEmpty) {
  const SymSet a = sidon_difference_construction(5);
  const LemmaReport r = check_x_bounds(a, max_overlap_shift(a.set()).first);
  EXPECT_TRUE(r.ok()) << json(r).dump();
  EXPECT_TRUE(r.extra.contains("observed_C_a"));
  EXPECT_TRUE(check_x_bounds(SymSet::make({-1, 1}), 5).vacuous);
}

// General coefficients.

TEST(General, LambdaAndCube) {
  const GeneralCosinePoly f({{1.0, SymSet::make({-3, -2, -1, 1, 2, 3})}, {1.0 / 2000.0, SymSet::make({-7, 7})}});
  const GeneralFt ft = build_general_Ft(f, 1);
  EXPECT_TRUE(ft.report.ok()) << json(ft.report).dump();
  EXPECT_LE(ft.report.extra["max_eps"].get<double>(), 0.01);
  const LemmaReport c = check_general_cube(f, 1);
  EXPECT_TRUE(c.ok()) << json(c).dump();
  EXPECT_EQ(code_of([] { GeneralCosinePoly({{1.0, SymSet::make({-1, 1})}, {0.5, SymSet::make({-1, 1})}}); }),
            ErrorCode::SupportsNotDisjoint);
}

TEST(Vandermonde, Examples) {
  const LemmaReport k1 = check_vandermonde_extraction(GeneralCosinePoly({{1.0, SymSet::make({-1, 1})}}));
  EXPECT_TRUE(k1.ok());
  EXPECT_NEAR(k1.extra["c"][0].get<double>(), 1.0, 1e-15);
  const LemmaReport k2 = check_vandermonde_extraction(
      GeneralCosinePoly({{1.0, SymSet::make({-1, 1})}, {0.5, SymSet::make({-2, 2})}}));
  EXPECT_TRUE(k2.ok());
  EXPECT_LE(k2.lhs, 1e-10);
  // s = (1, 1/2): c1·s + c2·s² = [s = 1] gives c = (-1, 2).
  EXPECT_NEAR(k2.extra["c"][0].get<double>(), -1.0, 1e-12);
  EXPECT_NEAR(k2.extra["c"][1].get<double>(), 2.0, 1e-12);
}

// Meta-test: every headline flips when the inequality is negated.

TEST(Negate, HeadlinesFail) {
  CheckOptions neg;
  neg.negate = true;
  const SymSet a = sidon_difference_construction(4);
  const Int t = max_overlap_shift(a.set()).first;
  EXPECT_FALSE(check_min_to_l1(kCos, neg).pass);
  EXPECT_FALSE(check_conv_min(kCos, kCos, neg).pass);
  EXPECT_FALSE(check_kconv(kCos, kCos, neg).pass);
  EXPECT_FALSE(check_ap_bound(a, neg).pass);
  EXPECT_FALSE(check_cube_inequality(a, t, neg).pass);
  EXPECT_FALSE(check_l1_bound(a, t, neg).pass);
  EXPECT_FALSE(check_x_bounds(a, t, neg).pass);
  EXPECT_FALSE(check_ruzsa_witness(ap_set(10), IntSet{4, 5, 6}, IntSet{1, 2, 3}, 1, neg).pass);
}
