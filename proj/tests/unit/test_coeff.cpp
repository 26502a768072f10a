#include <gtest/gtest.h>

#include "hallforge/coeff.hpp"
#include "hallforge/errors.hpp"
#include "hallforge/linear_combination.hpp"

using namespace hallforge;

namespace {

TEST(Coeff, PowersOfT) {
  EXPECT_EQ(Coeff::tpow(2, 2), Coeff(2));
  EXPECT_EQ(Coeff::tpow(2, 0), Coeff(1));
  const Coeff inv_t = Coeff::tpow(2, -1);  // 1/t = t/2
  EXPECT_EQ(inv_t.a(), 0);
  EXPECT_EQ(inv_t.b(), mpq_class(1, 2));
  EXPECT_EQ(Coeff::tpow(3, 3) * Coeff::tpow(3, -3), Coeff(1));
  EXPECT_EQ(Coeff::tpow(3, 1) * Coeff::tpow(3, 1), Coeff(3));
}

TEST(Coeff, PerfectSquareOrdersReduce) {
  EXPECT_EQ(Coeff::tpow(4, 1), Coeff(2));
  EXPECT_EQ(Coeff::tpow(9, -1), Coeff(mpq_class(1, 3)));
  EXPECT_EQ(Coeff(4, 1, 1).b(), 0);
}

TEST(Coeff, FieldOperations) {
  const Coeff x(2, 1, 1);  // 1 + t
  const Coeff y(2, -1, 1);
  EXPECT_EQ(x * y, Coeff(1));  // (1+t)(t-1) = t^2 - 1 = 1
  EXPECT_EQ(x.inverse(), y);
  EXPECT_EQ(x / x, Coeff(1));
  EXPECT_EQ(-x + x, Coeff(0));
  EXPECT_THROW(Coeff(0).inverse(), std::domain_error);
  EXPECT_THROW(x / Coeff(0), std::domain_error);
}

TEST(Coeff, MixingFields) {
  EXPECT_THROW(Coeff::tpow(2, 1) + Coeff::tpow(3, 1), ContractViolation);
  EXPECT_EQ(Coeff::tpow(2, 1) * Coeff(3), Coeff(2, 0, 3));  // untyped rationals combine freely
}

TEST(Coeff, TextRoundTrip) {
  for (const Coeff& c : {Coeff(0), Coeff(mpq_class(-7, 3)), Coeff(2, mpq_class(1, 2), mpq_class(-3, 4)),
                         Coeff::tpow(3, -5)}) {
    EXPECT_EQ(Coeff::parse(c.q() ? c.q() : 2, c.to_string()), c) << c.to_string();
  }
  EXPECT_EQ(Coeff(mpq_class(1, 2)).to_string(), "1/2");
  EXPECT_EQ(Coeff::tpow(2, -1).to_string(), "0 + 1/2*t");
  EXPECT_THROW(Coeff::parse(2, "1 + 2*x"), std::invalid_argument);
}

TEST(LinearCombination, DropsZeros) {
  using LC = LinearCombination<int>;
  LC x = LC::single(1, Coeff(2));
  x.add(1, Coeff(-2));
  EXPECT_TRUE(x.is_zero());
  EXPECT_EQ(x.size(), 0u);
  LC y = LC::single(3) + LC::single(4, Coeff(5));
  EXPECT_EQ(y.coefficient(4), Coeff(5));
  EXPECT_EQ(y.coefficient(9), Coeff(0));
  EXPECT_EQ((y - y).size(), 0u);
  EXPECT_EQ(y.scaled(Coeff(0)).size(), 0u);
}

}  // namespace
