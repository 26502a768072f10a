#include <gtest/gtest.h>

#include "hallforge/verify.hpp"
#include "support.hpp"

using namespace hallforge;
using hallforge::testing::Env;

namespace {

TEST(TwoComplex, ShiftIsAnInvolution) {
  Env e("a2", 3);
  for (const auto& a : e.cat.iso_classes(2)) {
    const auto c = e.cx.c_of(a);
    EXPECT_TRUE(e.cx.is_isomorphic(e.cx.shift(e.cx.shift(c)), c)) << a.to_string();
  }
  const std::vector<long long> mult{1, 2};
  EXPECT_TRUE(e.cx.is_isomorphic(e.cx.shift(e.cx.k_of(mult)), e.cx.kstar_of(mult)));
}

TEST(TwoComplex, ResolutionComplexes) {
  Env e("a2", 2);
  const auto s1 = e.simple(0);
  const auto c = e.cx.c_of(s1);
  EXPECT_EQ(c.m1_tops, std::vector<std::size_t>{1});
  EXPECT_EQ(c.m0_tops, std::vector<std::size_t>{0});
  EXPECT_EQ(e.cx.hat(c), KClass({1, 0}));
  EXPECT_EQ(e.cx.homology(c), std::make_pair(s1, e.zero_label()));
  EXPECT_EQ(e.cx.homology(e.cx.shift(c)), std::make_pair(e.zero_label(), s1));

  const auto p1 = e.label(e.cat.projective({0}));
  const auto cp = e.cx.c_of(p1);
  EXPECT_TRUE(cp.m1_tops.empty());
  EXPECT_EQ(e.cx.homology(cp).first, p1);
}

TEST(TwoComplex, KComplexesAreAcyclic) {
  Env e("kronecker", 2);
  const auto k = e.cx.k_of({1, 1});
  const auto [h0, h1] = e.cx.homology(k);
  EXPECT_TRUE(h0.is_zero());
  EXPECT_TRUE(h1.is_zero());
  EXPECT_EQ(e.cx.hat(k), KClass({0, 0}));
  EXPECT_EQ(e.cx.rank_vector(k.d1), KClass({1, 3}));
}

TEST(TwoComplex, ValidateRejectsBadDifferentials) {
  Env e("a2", 2);
  const auto& p = e.cat.projective({0});
  const auto id = e.cat.identity(p);
  // d0 ∘ d1 = Id ≠ 0
  EXPECT_THROW(e.cx.make_complex({0}, {0}, id, id), InvalidComplex);
  const auto& p2 = e.cat.projective({1});
  EXPECT_THROW(e.cx.make_complex({1}, {0}, id, e.cat.zero_morphism(p, p2)), InvalidComplex);
  EXPECT_NO_THROW(e.cx.make_complex({0}, {0}, id, e.cat.zero_morphism(p, p)));
}

TEST(TwoComplex, DecomposeNormalForms) {
  Env e("a2", 2);
  for (const auto& a : e.cat.iso_classes(2))
    for (const auto& b : e.cat.iso_classes(1)) {
      const auto d = e.cx.decompose(e.cx.normal_form_complex(a, b));
      EXPECT_EQ(d.exponent, 0);
      EXPECT_EQ(d.witness.a, a);
      EXPECT_EQ(d.witness.b, b);
      EXPECT_EQ(d.witness.p_class, KClass({0, 0}));
      EXPECT_EQ(d.witness.q_class, KClass({0, 0}));
    }
  const auto dk = e.cx.decompose(e.cx.direct_sum(e.cx.k_of({1, 0}), e.cx.kstar_of({0, 2})));
  EXPECT_EQ(dk.witness.p_class, KClass({1, 1}));
  EXPECT_EQ(dk.witness.q_class, KClass({0, 2}));
  EXPECT_TRUE(dk.witness.a.is_zero());
  EXPECT_EQ(dk.exponent, 0);
}

TEST(TwoComplex, DecomposeIsIsomorphismInvariant) {
  Env e("a2", 3);
  const auto s1 = e.simple(0);
  const auto m = e.cx.direct_sum(e.cx.c_of(s1), e.cx.k_of({0, 1}));
  const auto n = e.cx.direct_sum(e.cx.k_of({0, 1}), e.cx.c_of(s1));
  ASSERT_TRUE(e.cx.is_isomorphic(m, n));
  const auto dm = e.cx.decompose(m), dn = e.cx.decompose(n);
  EXPECT_EQ(dm.witness, dn.witness);
  EXPECT_EQ(dm.exponent, dn.exponent);
}

TEST(TwoComplex, ReassembleRoundTrip) {
  Env e("a2", 2);
  for (const auto& w : enumerate_witnesses(e.cx, 2)) {
    const auto d = e.cx.decompose(e.cx.reassemble(w));
    EXPECT_EQ(d.witness, w);
  }
}

TEST(TwoComplex, HomotopyQuotientMatchesExt) {
  Env e("a2", 2);
  const auto labels = e.cat.iso_classes(2);
  for (const auto& a : labels)
    for (const auto& b : labels) {
      const auto h = e.cx.complex_hom(e.cx.c_of(a), e.cx.shift(e.cx.c_of(b)));
      EXPECT_EQ(h.homotopy_quotient_dim, e.cat.ext_dim(a, b)) << a.to_string() << " " << b.to_string();
    }
}

TEST(TwoComplex, ExtMiddleHistogramTotals) {
  Env e("a2", 2);
  const auto s1 = e.simple(0), s2 = e.simple(1);
  const auto x = e.cx.c_of(s1), y = e.cx.shift(e.cx.c_of(s2));
  const auto hist = e.cx.ext_middle_histogram(x, y);
  std::uint64_t total = 0;
  for (const auto& [w, ec] : hist.terms) total += ec.second;
  EXPECT_EQ(total, EnumerationBudget::power(2, hist.ext_dim));
  EXPECT_EQ(hist.ext_dim, e.cx.ext1_dim(x, y));
  for (const auto& s : e.cx.ext1_classes(x, y)) EXPECT_NO_THROW(e.cx.validate(e.cx.ext_middle(x, y, s)));
}

}  // namespace
