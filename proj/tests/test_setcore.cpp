#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace chowla;
using testutil::to_oracle;
using testutil::vec;

namespace {

template <typename F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(SymSet, AcceptsSymmetricInput) {
  const SymSet a = SymSet::make({3, -1, 1, -3});
  EXPECT_EQ(vec(a.set()), (std::vector<long long>{-3, -1, 1, 3}));
}

TEST(SymSet, RejectsAsymmetricAndZero) {
  EXPECT_EQ(code_of([] { SymSet::make({1, 2}); }), ErrorCode::NotSymmetric);
  EXPECT_EQ(code_of([] { SymSet::make({0, 1, -1}); }), ErrorCode::ContainsZero);
}

TEST(SymSet, FromPositive) {
  EXPECT_EQ(vec(SymSet::from_positive(IntSet{1, 2}).set()), (std::vector<long long>{-2, -1, 1, 2}));
  EXPECT_EQ(vec(SymSet::from_positive(IntSet{5}).set()), (std::vector<long long>{-5, 5}));
  EXPECT_EQ(vec(SymSet::from_positive(IntSet{1, 2, 4}).set()), (std::vector<long long>{-4, -2, -1, 1, 2, 4}));
  EXPECT_EQ(code_of([] { SymSet::from_positive(IntSet{-1, 2}); }), ErrorCode::NonPositiveElement);
}

TEST(SymSet, DuplicatesCollapse) {
  EXPECT_EQ(SymSet::make({1, -1, 1, -1}).size(), 2u);
}

TEST(DerivedSets, SmallExampleMatchesMembershipOracle) {
  // Membership enumeration: A_t = {-1, 2}, -A_t = {-2, 1}, so A_t Δ -A_t = A and D_t is empty.
  const DerivedSets d = derived_sets(SymSet::make({-2, -1, 1, 2}), 1);
  EXPECT_EQ(vec(d.a_t), (std::vector<long long>{-1, 2}));
  EXPECT_EQ(vec(d.b_t), (std::vector<long long>{-1, 2}));
  EXPECT_EQ(vec(d.c_t), (std::vector<long long>{3}));
  EXPECT_TRUE(d.d_t.empty());
}

TEST(DerivedSets, DisjointShift) {
  // A + 5 = {4, 6}, neither is in A ∪ (A - 5).
  const DerivedSets d = derived_sets(SymSet::make({-1, 1}), 5);
  EXPECT_TRUE(d.a_t.empty());
  EXPECT_TRUE(d.b_t.empty());
  EXPECT_EQ(vec(d.c_t), (std::vector<long long>{4, 6}));
  EXPECT_EQ(vec(d.d_t), (std::vector<long long>{-1, 1}));
}

TEST(DerivedSets, ZeroShiftRejected) {
  EXPECT_EQ(code_of([] { derived_sets(SymSet::make({-1, 1}), 0); }), ErrorCode::ZeroShift);
}

TEST(DerivedSets, RandomAgainstOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const SymSet a = random_symmetric(rng, 12);
    std::uniform_int_distribution<Int> td(-3 * static_cast<Int>(a.degree()), 3 * static_cast<Int>(a.degree()));
    Int t = td(rng);
    if (t == 0) t = 1;
    const DerivedSets d = derived_sets(a, t);
    const oracle::Derived o = oracle::derived(to_oracle(a.set()), t);
    ASSERT_EQ(to_oracle(d.a_t), o.a_t);
    ASSERT_EQ(to_oracle(d.b_t), o.b_t);
    ASSERT_EQ(to_oracle(d.c_t), o.c_t);
    ASSERT_EQ(to_oracle(d.d_t), o.d_t);
    if (d.a_t.empty()) {
      EXPECT_TRUE(d.b_t.empty());
    }
    // E_t is everything in the spectrum of f_t not covered by the five sets.
    for (Int x : d.e_t) {
      EXPECT_FALSE(d.b_t.contains(x) || d.b_t.contains(-x) || d.c_t.contains(x) || d.c_t.contains(-x) ||
                   d.d_t.contains(x));
    }
  }
}

TEST(ApPartition, Examples) {
  const ApPartition p = ap_partition(IntSet{1, 2, 3, 7}, 1);
  ASSERT_EQ(p.progressions.size(), 2u);
  EXPECT_EQ(vec(p.progressions[0]), (std::vector<long long>{1, 2, 3}));
  EXPECT_EQ(vec(p.progressions[1]), (std::vector<long long>{7}));
  EXPECT_EQ(p.r, 1u);
  EXPECT_EQ(ap_partition(IntSet{2, 4, 6}, 2).progressions.size(), 1u);
  EXPECT_EQ(ap_partition(IntSet{2, 4, 6}, 2).r, 1u);
  const ApPartition q = ap_partition(IntSet{1, 4, 7, 9}, 3);
  EXPECT_EQ(vec(q.progressions[0]), (std::vector<long long>{1, 4, 7}));
  EXPECT_EQ(q.r, 1u);
  EXPECT_EQ(ap_partition(IntSet{1, 4, 7, 9}, -3).r, 1u);
}

TEST(ApPartition, CoversSetExactly) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const SymSet a = random_symmetric(rng, 10);
    const ApPartition p = ap_partition(a.set(), 2);
    std::size_t total = 0;
    for (const auto& prog : p.progressions) total += prog.size();
    EXPECT_EQ(total, a.size());
  }
}

TEST(LongestAp, Examples) {
  const LongestAp l = longest_ap(IntSet{1, 3, 5, 8});
  EXPECT_EQ(l.length, 3u);
  EXPECT_EQ(vec(l.witness), (std::vector<long long>{1, 3, 5}));
  EXPECT_EQ(longest_ap(IntSet{-2, -1, 1, 2}).length, 2u);
  EXPECT_EQ(longest_ap(IntSet{7}).length, 1u);
  EXPECT_EQ(code_of([] { longest_ap(IntSet{}); }), ErrorCode::EmptySet);
}

TEST(LongestAp, RandomAgainstExhaustiveOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> v(-30, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Int> raw;
    for (int i = 0; i < 12; ++i) raw.push_back(v(rng));
    const IntSet s(raw);
    const LongestAp l = longest_ap(s);
    ASSERT_EQ(l.length, oracle::longest_ap(to_oracle(s)));
    ASSERT_TRUE(l.witness.is_subset_of(s));
    ASSERT_EQ(l.witness.size(), l.length);
  }
}

TEST(AdditiveEnergy, Examples) {
  EXPECT_EQ(additive_energy(IntSet{1, 2}, SymSet::make({-1, 1}).set()), 2u);
  EXPECT_EQ(additive_energy(IntSet{}, SymSet::make({-1, 1}).set()), 0u);
}

TEST(AdditiveEnergy, RandomAgainstDoubleLoop) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const SymSet a = random_symmetric(rng, 15);
    const SymSet b = random_symmetric(rng, 15);
    EXPECT_EQ(additive_energy(b.set(), a.set()), oracle::pair_energy(to_oracle(b.set()), to_oracle(a.set())));
    EXPECT_EQ(quadruple_energy(a.set()), oracle::quartic_energy(to_oracle(a.set())));
  }
}

TEST(Sidon, GreedySequence) {
  // Greedy from 1: 1, 2, 4, 8, 13, 21, 31, 45, 66, 81 (Mian–Chowla).
  EXPECT_EQ(vec(sidon_set(1)), (std::vector<long long>{1}));
  EXPECT_EQ(vec(sidon_set(4)), (std::vector<long long>{1, 2, 4, 8}));
  EXPECT_EQ(vec(sidon_set(10)), (std::vector<long long>{1, 2, 4, 8, 13, 21, 31, 45, 66, 81}));
  for (std::size_t m = 1; m <= 12; ++m) EXPECT_TRUE(oracle::is_sidon(vec(sidon_set(m))));
}

TEST(Sidon, DifferenceConstruction) {
  EXPECT_EQ(vec(sidon_difference_construction(2).set()), (std::vector<long long>{-1, 1}));
  for (std::size_t m = 2; m <= 10; ++m) EXPECT_EQ(sidon_difference_construction(m).size(), m * m - m);
  EXPECT_EQ(code_of([] { sidon_difference_construction(1); }), ErrorCode::PreconditionViolated);
}

TEST(BtLower, ExampleAndPrecondition) {
  const SymSet a = SymSet::make({-3, -2, -1, 1, 2, 3});
  // {-3,-1,1,3} is a progression of length 4, so L = 3 is not admissible.
  EXPECT_EQ(longest_ap(a.set()).length, 4u);
  EXPECT_EQ(code_of([&] { bt_lower_bound_check(a, 1, 3); }), ErrorCode::PreconditionViolated);
  const LemmaReport r = bt_lower_bound_check(a, 1, 4);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.extra["A_t_size"].get<std::size_t>(), 4u);
  EXPECT_EQ(r.extra["B_t_size"].get<std::size_t>(), 2u);
}

TEST(BtLower, EmptyIntersectionPasses) {
  const LemmaReport r = bt_lower_bound_check(SymSet::make({-1, 1}), 5, 2);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
}

TEST(BtLower, RandomIntegerExact) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const SymSet a = random_symmetric(rng, 14);
    std::uniform_int_distribution<Int> td(1, 2 * a.degree());
    const Int t = td(rng);
    const std::size_t l = longest_ap(a.set()).length;
    const LemmaReport r = bt_lower_bound_check(a, t, l);
    ASSERT_TRUE(r.ok()) << a.set().to_string() << " t=" << t;
    const oracle::Derived o = oracle::derived(to_oracle(a.set()), t);
    ASSERT_GE(l * o.b_t.size(), o.a_t.size());
  }
}
