#include <gtest/gtest.h>

#include "support.hpp"

using namespace hallforge;
using hallforge::testing::Env;

namespace {

std::uint64_t gl2(std::uint64_t q) { return (q * q - 1) * (q * q - q); }

TEST(Quiver, FixturesAndForms) {
  const auto a2 = Quiver::fixture("a2");
  EXPECT_EQ(a2.vertex_count(), 2u);
  EXPECT_EQ(a2.euler_form(KClass({1, 0}), KClass({0, 1})), -1);
  EXPECT_EQ(a2.euler_form(KClass({0, 1}), KClass({1, 0})), 0);
  EXPECT_EQ(a2.sym_euler_form(KClass({1, 0}), KClass({0, 1})), -1);
  EXPECT_EQ(a2.projective_class(0), KClass({1, 1}));
  EXPECT_EQ(a2.projective_class(1), KClass({0, 1}));
  EXPECT_EQ(a2.fingerprint(), "v2;0>1");

  const auto kr = Quiver::fixture("kronecker");
  EXPECT_EQ(kr.euler_form(KClass({1, 1}), KClass({1, 1})), 0);
  EXPECT_EQ(kr.projective_class(0), KClass({1, 2}));
  EXPECT_EQ(kr.paths(0, 1).size(), 2u);

  EXPECT_FALSE(Quiver::is_fixture("d4x"));
  EXPECT_THROW(Quiver("loop", {"x"}, {{0, 0, "a"}}), ContractViolation);
  EXPECT_THROW(Quiver("cycle", {"x", "y"}, {{0, 1, "a"}, {1, 0, "b"}}), ContractViolation);
}

TEST(Quiver, JsonRoundTrip) {
  const auto kr = Quiver::fixture("kronecker");
  const auto back = Quiver::from_json(kr.to_json());
  EXPECT_EQ(back.fingerprint(), kr.fingerprint());
  const auto named = Quiver::from_json(nlohmann::json::parse(R"({"name":"x","vertices":["u","v"],"arrows":[["u","v"]]})"));
  EXPECT_EQ(named.fingerprint(), "v2;0>1");
}

TEST(QuiverCategory, HomExtSimplesA2) {
  Env e("a2", 2);
  const auto& cat = e.cat;
  const auto s1 = cat.simple(0), s2 = cat.simple(1), p1 = cat.projective({0});
  EXPECT_EQ(cat.hom_space(s1, s2).dim, 0u);
  EXPECT_EQ(cat.ext_dim(s1, s2), 1u);  // 0 -> S2 -> P1 -> S1 -> 0
  EXPECT_EQ(cat.ext_dim(s2, s1), 0u);
  EXPECT_EQ(cat.hom_space(p1, s1).dim, 1u);
  EXPECT_EQ(cat.hom_space(s2, p1).dim, 1u);
  EXPECT_EQ(cat.ext_dim(p1, s2), 0u);
}

TEST(QuiverCategory, EulerFormMatchesHomMinusExt) {
  for (const char* name : {"a1", "a2", "kronecker"}) {
    Env e(name, 3);
    const auto labels = e.cat.iso_classes(2);
    for (const auto& a : labels)
      for (const auto& b : labels) {
        const long long lhs = static_cast<long long>(e.cat.hom_dim(a, b)) - static_cast<long long>(e.cat.ext_dim(a, b));
        EXPECT_EQ(lhs, e.cat.quiver().euler_form(a.kclass(), b.kclass())) << name << " " << a.to_string() << " " << b.to_string();
      }
  }
}

TEST(QuiverCategory, AutomorphismOrders) {
  for (int q : {2, 3, 4}) {
    Env e("a1", q);
    EXPECT_EQ(e.cat.aut_order(e.simple(0)), static_cast<std::uint64_t>(q - 1));
    const auto k2 = e.label(e.cat.direct_sum(e.cat.simple(0), e.cat.simple(0)));
    EXPECT_EQ(e.cat.aut_order(k2), gl2(static_cast<std::uint64_t>(q)));
  }
  Env e("a2", 3);
  EXPECT_EQ(e.cat.aut_order(e.label(e.cat.projective({0}))), 2u);  // End(P1) = k
  EXPECT_EQ(e.cat.aut_order(e.label(e.cat.direct_sum(e.cat.simple(0), e.cat.simple(1)))), 4u);
}

TEST(QuiverCategory, RegistryCounts) {
  Env a2("a2", 2);
  EXPECT_EQ(a2.cat.labels_of_dimvec({1, 1}).size(), 2u);
  EXPECT_EQ(a2.cat.labels_of_dimvec({2, 0}).size(), 1u);
  EXPECT_EQ(a2.cat.iso_classes(3).size(), 13u);
  // Split sum has the all-zero code, so it is label 0.
  EXPECT_EQ(a2.label(a2.cat.direct_sum(a2.cat.simple(0), a2.cat.simple(1))).index, 0u);
  EXPECT_EQ(a2.label(a2.cat.projective({0})).index, 1u);
  for (int q : {2, 3}) {
    Env kr("kronecker", q);
    EXPECT_EQ(kr.cat.labels_of_dimvec({1, 1}).size(), static_cast<std::size_t>(q + 2));  // P^1 of bricks + split
  }
  const auto classes = a2.cat.iso_classes(2);
  for (std::size_t i = 1; i < classes.size(); ++i) EXPECT_LE(classes[i - 1].total_dim(), classes[i].total_dim());
}

TEST(QuiverCategory, ExtCountsSumToExtSize) {
  Env e("a2", 3);
  const auto labels = e.cat.iso_classes(2);
  for (const auto& a : labels)
    for (const auto& b : labels) {
      std::uint64_t total = 0;
      for (const auto& [c, n] : *e.cat.ext_counts(a, b)) total += n;
      EXPECT_EQ(total, EnumerationBudget::power(3, e.cat.ext_dim(a, b)));
      if (a.total_dim() + b.total_dim() > 3) continue;  // brute-force isomorphism test gets too large
      for (const auto& [c, n] : *e.cat.ext_counts(a, b))
        EXPECT_EQ(n, e.cat.ext_count_with_middle(e.cat.representative(a), e.cat.representative(b), c));
    }
}

TEST(QuiverCategory, MinimalResolutions) {
  Env e("a2", 2);
  const auto s1 = e.simple(0);
  const auto r = e.cat.minimal_resolution(s1);
  EXPECT_EQ(r->p_tops, std::vector<std::size_t>{1});
  EXPECT_EQ(r->q_tops, std::vector<std::size_t>{0});
  EXPECT_EQ(e.cat.resolution_p_class(s1), KClass({0, 1}));
  EXPECT_EQ(e.cat.resolution_q_class(s1), KClass({1, 1}));
  const auto p1 = e.label(e.cat.projective({0}));
  EXPECT_TRUE(e.cat.minimal_resolution(p1)->p_tops.empty());
  EXPECT_TRUE(e.cat.is_morphism(r->f, r->p, r->q));

  Env kr("kronecker", 2);
  const auto ks1 = kr.simple(0);
  EXPECT_EQ(kr.cat.resolution_p_class(ks1), KClass({0, 2}));  // 0 -> P2^2 -> P1 -> S1 -> 0
}

TEST(QuiverCategory, ProjectiveMultiplicities) {
  Env e("a2", 2);
  EXPECT_EQ(e.cat.projective_multiplicities(KClass({2, 3})), (std::vector<long long>{2, 1}));
  EXPECT_FALSE(e.cat.projective_multiplicities(KClass({1, 0})).has_value());
  EXPECT_EQ(e.cat.projective_multiplicities(KClass({0, 1})), (std::vector<long long>{0, 1}));
  EXPECT_EQ(QuiverCategory::tops_from_multiplicities({2, 1}), (std::vector<std::size_t>{0, 0, 1}));
}

TEST(QuiverCategory, BudgetIsEnforced) {
  QuiverCategory cat(Quiver::fixture("kronecker"), 3, EnumerationBudget{5});
  EXPECT_THROW(cat.iso_classes(2), BudgetExceeded);  // 9 arrow codes at (1,1)
  QuiverCategory a1(Quiver::fixture("a1"), 3, EnumerationBudget{5});
  const auto k2 = a1.identify(a1.direct_sum(a1.simple(0), a1.simple(0)));
  EXPECT_THROW(a1.aut_order(k2), BudgetExceeded);  // 81 candidate endomorphisms
}

TEST(QuiverCategory, IsomorphismSearch) {
  Env e("a2", 3);
  const auto split = e.cat.direct_sum(e.cat.simple(0), e.cat.simple(1));
  const auto p1 = e.cat.projective({0});
  EXPECT_FALSE(e.cat.is_isomorphic(split, p1));
  const auto iso = e.cat.find_isomorphism(p1, e.cat.representative(e.label(p1)));
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(e.cat.is_invertible(*iso));
}

}  // namespace
