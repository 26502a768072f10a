#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hallforge/count_store.hpp"
#include "support.hpp"

using namespace hallforge;
using hallforge::testing::Env;

namespace {

const KClass k00({0, 0});

TEST(DoubleAlgebra, Generators) {
  Env e("a2", 2);
  const auto z = e.zero_label(), s1 = e.simple(0);
  EXPECT_EQ(e.dh.e(z), e.dh.unit());
  EXPECT_EQ(e.dh.f(z), e.dh.unit());
  EXPECT_EQ(e.dh.e(s1), e.dh.term(KClass({0, -1}), k00, s1, z));
  EXPECT_EQ(e.dh.f(s1), e.dh.term(k00, KClass({0, -1}), z, s1));
  const auto p1 = e.label(e.cat.projective({0}));
  EXPECT_EQ(e.dh.e(p1), e.dh.term(k00, k00, p1, z));  // projective: P_A = 0
  EXPECT_EQ(e.dh.star(e.dh.e(s1)), e.dh.f(s1));
}

TEST(DoubleAlgebra, NormalizeKComplexes) {
  Env e("a2", 3);
  EXPECT_EQ(e.dh.normalize(e.cx.k_of({1, 0})), e.dh.k_plus(KClass({1, 1})));
  EXPECT_EQ(e.dh.normalize(e.cx.kstar_of({0, 1})), e.dh.k_minus(KClass({0, 1})));
  EXPECT_EQ(e.dh.normalize(e.cx.zero()), e.dh.unit());
  EXPECT_EQ(e.dh.multiply(e.dh.k_plus(KClass({1, -1})), e.dh.k_plus(KClass({-1, 1}))), e.dh.unit());
}

TEST(DoubleAlgebra, KCommutationWithComplexes) {
  Env e("a2", 3);
  const auto s1 = e.simple(0), s2 = e.simple(1);
  const KClass a({1, 0});
  const auto m = e.dh.term(k00, k00, s2, e.zero_label());  // [C_S2], hat = (0,1)
  // K_α ∗ [M] is already in normal form; K_α ∗ [M] = t^{(α, M^)} [M] ∗ K_α with (α, M^) = -1
  EXPECT_EQ(e.dh.multiply(e.dh.k_plus(a), m), e.dh.term(a, k00, s2, e.zero_label()));
  EXPECT_EQ(e.dh.multiply(m, e.dh.k_plus(a)), e.dh.term(a, k00, s2, e.zero_label(), e.t(1)));
  const auto c1 = e.dh.term(k00, k00, s1, e.zero_label());  // hat = (1,0), (α, hat) = 2
  EXPECT_EQ(e.dh.multiply(c1, e.dh.k_minus(a)), e.dh.term(k00, a, s1, e.zero_label(), e.t(2)));
}

TEST(DoubleAlgebra, CommutatorOfSimples) {
  for (int q : {2, 3}) {
    Env e("a1", q);
    const auto k = e.simple(0);
    const KClass one(std::vector<long long>{1});
    const auto comm = e.dh.multiply(e.dh.e(k), e.dh.f(k)) - e.dh.multiply(e.dh.f(k), e.dh.e(k));
    const auto want = (e.dh.k_minus(one) - e.dh.k_plus(one)).scaled(Coeff(q - 1));
    EXPECT_EQ(comm, want) << "q=" << q;
  }
}

TEST(DoubleAlgebra, EmbeddingIsMultiplicative) {
  Env e("a2", 2);
  const auto x = e.hall.symbol(e.simple(0)), y = e.hall.symbol(e.simple(1));
  EXPECT_EQ(e.dh.embed_plus(e.hall.star(x, y)), e.dh.multiply(e.dh.embed_plus(x), e.dh.embed_plus(y)));
  EXPECT_EQ(e.dh.embed_minus(e.hall.star(x, y)), e.dh.multiply(e.dh.embed_minus(x), e.dh.embed_minus(y)));
  EXPECT_EQ(e.dh.embed_plus(e.hall.basis(e.zero_label(), KClass({1, 0}))), e.dh.k_plus(KClass({1, 0})));
  EXPECT_EQ(e.dh.embed_minus(e.hall.basis(e.zero_label(), KClass({1, 0}))), e.dh.k_minus(KClass({1, 0})));
}

TEST(DoubleAlgebra, CrossedRelationHoldsOnSampleCases) {
  Env e("a2", 3);
  const auto z = e.zero_label();
  const std::vector<HallBasis> samples{e.hall.basis(e.simple(0)), e.hall.basis(e.simple(1)),
                                       e.hall.basis(e.label(e.cat.projective({0}))),
                                       e.hall.basis(z, KClass({1, -1})), e.hall.basis(e.simple(1), KClass({0, 1}))};
  for (const auto& a : samples)
    for (const auto& b : samples) {
      const auto r = e.dh.check_double_relation(a, b, RelationForm::crossed, CoproductVariant::k_inserted);
      EXPECT_TRUE(r.equal) << r.case_tag << " " << a.to_string() << " " << b.to_string();
    }
  const auto kk = e.dh.check_double_relation(e.hall.basis(z, KClass({1, 0})), e.hall.basis(z, KClass({0, 1})),
                                             RelationForm::crossed, CoproductVariant::k_inserted);
  EXPECT_EQ(kk.case_tag, "KK");
}

TEST(DoubleAlgebra, LiteralRelationFailsForSimplePair) {
  Env e("a1", 2);
  const auto k = e.hall.basis(e.simple(0));
  const auto r = e.dh.check_double_relation(k, k, RelationForm::literal, CoproductVariant::literal);
  EXPECT_EQ(r.case_tag, "AA");
  EXPECT_FALSE(r.equal);
}

TEST(DoubleAlgebra, TriangularBasisSmall) {
  Env e("a2", 2);
  const auto r = e.dh.check_triangular_basis(1, 1);
  EXPECT_EQ(r.products, 9u * 81u);
  EXPECT_TRUE(r.independent);
  EXPECT_TRUE(r.triangular);
  EXPECT_EQ(r.rank, r.products);
  EXPECT_EQ(DoubleAlgebra::k_grid(2, 1).size(), 9u);
  EXPECT_EQ(DoubleAlgebra::k_grid(1, 2).front(), KClass(std::vector<long long>{-2}));
}

class DoubleAlgebraCache : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("hallforge-dh-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

DHElement square_of_e(const std::shared_ptr<CountStore>& store) {
  Env e("a2", 3, store);
  const auto s1 = e.simple(0), s2 = e.simple(1);
  return e.dh.multiply(e.dh.multiply(e.dh.e(s1), e.dh.f(s2)), e.dh.e(s2));
}

TEST_F(DoubleAlgebraCache, ProductsPersistAcrossInstances) {
  auto cold = std::make_shared<FileCountStore>(dir_);
  const auto x = square_of_e(cold);
  EXPECT_GT(cold->stats().writes, 0u);
  auto warm = std::make_shared<FileCountStore>(dir_);
  EXPECT_EQ(square_of_e(warm), x);
  EXPECT_GT(warm->stats().hits, 0u);
  EXPECT_EQ(warm->stats().writes, 0u);
  EXPECT_EQ(square_of_e(nullptr), x);
}

TEST_F(DoubleAlgebraCache, CorruptEntriesAreRecomputed) {
  auto cold = std::make_shared<FileCountStore>(dir_);
  const auto x = square_of_e(cold);
  for (const auto& f : std::filesystem::recursive_directory_iterator(dir_))
    if (f.is_regular_file()) std::ofstream(f.path()) << "{not json";
  std::vector<std::string> warnings;
  auto warm = std::make_shared<FileCountStore>(dir_, [&](const std::string& w) { warnings.push_back(w); });
  EXPECT_EQ(square_of_e(warm), x);
  EXPECT_FALSE(warnings.empty());
  EXPECT_GT(warm->stats().corrupt, 0u);
  EXPECT_GT(warm->stats().writes, 0u);
}

}  // namespace
