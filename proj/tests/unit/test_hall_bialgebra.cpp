#include <gtest/gtest.h>

#include "support.hpp"

using namespace hallforge;
using hallforge::testing::Env;

namespace {

struct A2 : Env {
  explicit A2(int q = 2) : Env("a2", q) {}
  IsoLabel s1 = simple(0);
  IsoLabel s2 = simple(1);
  IsoLabel split = label(cat.direct_sum(cat.simple(0), cat.simple(1)));
  IsoLabel p1 = label(cat.projective({0}));
};

TEST(Diamond, UnitAndClassicalValues) {
  for (int q : {2, 3, 5}) {
    A2 e(q);
    EXPECT_EQ(e.hall.diamond(e.hall.symbol(e.zero_label()), e.hall.symbol(e.p1)), e.hall.symbol(e.p1));
    HallElement want = e.hall.symbol(e.split);
    want.add(e.hall.basis(e.p1), Coeff(q - 1));
    EXPECT_EQ(e.hall.diamond(e.s1, e.s2), want);
    EXPECT_EQ(e.hall.diamond(e.s2, e.s1), e.hall.symbol(e.split));
  }
  for (int q : {2, 3}) {
    Env e("a1", q);
    const auto k = e.simple(0);
    const auto k2 = e.label(e.cat.direct_sum(e.cat.simple(0), e.cat.simple(0)));
    EXPECT_EQ(e.hall.diamond(k, k), e.hall.symbol(k2).scaled(Coeff(mpq_class(1, q))));
  }
}

TEST(Diamond, RejectsKSymbols) {
  A2 e;
  EXPECT_THROW(e.hall.diamond(e.hall.k_symbol(e.k({1, 0})), e.hall.symbol(e.s1)), ContractViolation);
}

TEST(Star, TwistedValues) {
  Env a1("a1", 2);
  const auto k = a1.simple(0);
  const auto k2 = a1.label(a1.cat.direct_sum(a1.cat.simple(0), a1.cat.simple(0)));
  // [k]*[k] = t * q^-1 [k^2] = t^-1 [k^2]
  EXPECT_EQ(a1.hall.star(a1.hall.symbol(k), a1.hall.symbol(k)), a1.hall.symbol(k2).scaled(a1.t(-1)));

  A2 e;
  const auto ka = e.hall.k_symbol(e.k({1, 0}));
  EXPECT_EQ(e.hall.star(ka, e.hall.k_symbol(e.k({-1, 0}))), e.hall.unit());
  // K_(1,0) * [S2] = t^-1 [S2] K_(1,0)
  EXPECT_EQ(e.hall.star(ka, e.hall.symbol(e.s2)), e.hall.symbol(e.s2, e.k({1, 0})).scaled(e.t(-1)));
  // [S1]*[S2] = t^-1 ([S1+S2] + [P1]) at q = 2
  HallElement want = e.hall.symbol(e.split).scaled(e.t(-1));
  want.add(e.hall.basis(e.p1), e.t(-1));
  EXPECT_EQ(e.hall.star(e.hall.symbol(e.s1), e.hall.symbol(e.s2)), want);
}

TEST(Coproduct, SpecValuesA2) {
  A2 e;
  const auto z = e.hall.basis(e.zero_label());
  for (auto v : {CoproductVariant::literal, CoproductVariant::k_inserted}) {
    EXPECT_EQ(e.hall.coproduct(z, v), TensorElement::single({z, z}));
    EXPECT_EQ(e.hall.counit(e.hall.symbol(e.s1)), Coeff(0));
    EXPECT_EQ(e.hall.counit(e.hall.k_symbol(e.k({2, -1}))), Coeff(1));
  }
  const auto s1 = e.hall.basis(e.s1);
  TensorElement literal = TensorElement::single({s1, z});
  literal.add({z, s1}, Coeff(1));
  EXPECT_EQ(e.hall.coproduct(s1, CoproductVariant::literal), literal);
  TensorElement inserted = TensorElement::single({s1, z});
  inserted.add({e.hall.basis(e.zero_label(), e.k({1, 0})), s1}, Coeff(1));
  EXPECT_EQ(e.hall.coproduct(s1, CoproductVariant::k_inserted), inserted);

  // Coefficient of [S1] (x) [S2] in Delta([S1+S2]) is t^-1 at q = 2.
  EXPECT_EQ(e.hall.coproduct_coefficient(e.split, e.s1, e.s2), e.t(-1));
  EXPECT_EQ(e.hall.coproduct_coefficient(e.split, e.s2, e.s1), Coeff(1));
  EXPECT_EQ(e.hall.coproduct_coefficient(e.p1, e.s2, e.s1), Coeff(0));  // S1 is not a subobject of P1
}

TEST(Coproduct, KSymbolsAreGroupLike) {
  A2 e;
  const auto k = e.hall.basis(e.zero_label(), e.k({1, -2}));
  EXPECT_EQ(e.hall.coproduct(k, CoproductVariant::k_inserted), TensorElement::single({k, k}));
}

TEST(Pairing, SpecValues) {
  A2 e;
  EXPECT_EQ(e.hall.hopf_pairing(e.hall.basis(e.s1), e.hall.basis(e.s2)), Coeff(0));
  EXPECT_EQ(e.hall.hopf_pairing(e.hall.basis(e.s1), e.hall.basis(e.s1)), Coeff(1));
  const auto a = e.k({1, 0}), b = e.k({0, 1});
  EXPECT_EQ(e.hall.hopf_pairing(e.hall.basis(e.zero_label(), a), e.hall.basis(e.zero_label(), b)), e.t(-1));
  A2 e3(3);
  EXPECT_EQ(e3.hall.hopf_pairing(e3.hall.basis(e3.split), e3.hall.basis(e3.split)), Coeff(4));  // |Aut| = (q-1)^2
}

TEST(Bialgebra, HomomorphismOnlyForKInsertedVariant) {
  Env e("a1", 3);
  const auto k = e.hall.symbol(e.simple(0));
  auto holds = [&](CoproductVariant v) {
    return e.hall.coproduct(e.hall.star(k, k), v) == e.hall.tensor_star(e.hall.coproduct(k, v), e.hall.coproduct(k, v));
  };
  EXPECT_TRUE(holds(CoproductVariant::k_inserted));
  EXPECT_FALSE(holds(CoproductVariant::literal));
}

TEST(Bialgebra, HopfPairingIdentitySample) {
  A2 e(3);
  const auto x = e.hall.symbol(e.s1), y = e.hall.symbol(e.s2);
  for (const auto& z : {e.split, e.p1}) {
    const auto ze = e.hall.symbol(z);
    EXPECT_EQ(e.hall.hopf_pairing(e.hall.star(x, y), ze),
              e.hall.tensor_pairing(e.hall.tensor(x, y), e.hall.coproduct(ze, CoproductVariant::k_inserted)));
  }
}

}  // namespace
