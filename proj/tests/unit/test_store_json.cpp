#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hallforge/count_store.hpp"
#include "hallforge/json_io.hpp"
#include "support.hpp"

using namespace hallforge;
using hallforge::testing::Env;
using nlohmann::json;

namespace {

class StoreDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("hallforge-store-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST(Sha256, KnownDigests) {
  EXPECT_EQ(FileCountStore::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(FileCountStore::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_F(StoreDir, RoundTripAndStats) {
  FileCountStore s(dir_);
  EXPECT_FALSE(s.load("k1").has_value());
  s.store("k1", json{{"n", 3}});
  ASSERT_TRUE(s.load("k1").has_value());
  EXPECT_EQ(s.load("k1")->at("n"), 3);
  EXPECT_TRUE(std::filesystem::exists(s.path_for("k1")));
  EXPECT_EQ(s.path_for("k1").filename().string(), FileCountStore::sha256_hex("k1") + ".json");
  const auto st = s.stats();
  EXPECT_EQ(st.misses, 1u);
  EXPECT_EQ(st.hits, 2u);
  EXPECT_EQ(st.writes, 1u);
  FileCountStore again(dir_);
  EXPECT_EQ(again.load("k1")->at("n"), 3);
}

TEST_F(StoreDir, CorruptAndMismatchedEntriesAreMisses) {
  std::vector<std::string> warnings;
  FileCountStore s(dir_, [&](const std::string& w) { warnings.push_back(w); });
  s.store("a", json(1));
  s.store("b", json(2));
  std::ofstream(s.path_for("a"), std::ios::trunc) << "{\"key\": \"a\", \"val";
  EXPECT_FALSE(s.load("a").has_value());
  // An entry whose embedded key differs from the requested one.
  std::filesystem::create_directories(s.path_for("c").parent_path());
  std::filesystem::copy_file(s.path_for("b"), s.path_for("c"), std::filesystem::copy_options::overwrite_existing);
  EXPECT_FALSE(s.load("c").has_value());
  EXPECT_EQ(warnings.size(), 2u);
  EXPECT_EQ(s.stats().corrupt, 2u);
  s.store("a", json(1));
  EXPECT_EQ(s.load("a"), json(1));
}

TEST(HallBasisText, Parse) {
  const auto a = parse_hall_basis("[(1,0)#0]", 2);
  EXPECT_EQ(a.label, (IsoLabel{{1, 0}, 0}));
  EXPECT_TRUE(a.k.is_zero());
  const auto b = parse_hall_basis("[(1,1)#1]K(0,-1)", 2);
  EXPECT_EQ(b.label.index, 1u);
  EXPECT_EQ(b.k, KClass({0, -1}));
  const auto c = parse_hall_basis("K(2,1)", 2);
  EXPECT_TRUE(c.label.is_zero());
  EXPECT_EQ(c.k, KClass({2, 1}));
  EXPECT_EQ(parse_hall_basis(b.to_string(), 2), b);
  EXPECT_THROW(parse_hall_basis("[(1,0,0)#0]", 2), std::invalid_argument);
  EXPECT_THROW(parse_hall_basis("S1", 2), std::invalid_argument);
}

TEST(ComplexLiteral, ParseAndPrint) {
  Env e("a2", 2);
  const auto m = complex_from_json(e.cx, json::parse(R"({"m1":[0,1],"m0":[1,0],"d1":[[[]],[[1]]]})"));
  EXPECT_TRUE(e.cx.is_isomorphic(m, e.cx.c_of(e.simple(0))));
  const auto back = complex_from_json(e.cx, complex_to_json(e.cx, m));
  EXPECT_EQ(back, m);
  const auto k = complex_from_json(e.cx, json::parse(R"({"m1_tops":[1],"m0_tops":[1],"d1":[[],[[1]]]})"));
  EXPECT_EQ(e.dh.normalize(k), e.dh.k_plus(KClass({0, 1})));
}

TEST(ComplexLiteral, Rejections) {
  Env e("a2", 2);
  for (const char* bad : {R"({"m1":[0,1],"m0":[1,0],"d1":[[[]],[[2]]]})",  // not a field element
                          R"({"m1":[0,1],"m0":[1,0],"d1":[[[1]]]})",        // wrong vertex count
                          R"({"m1":[0,1],"m0":[1,0],"d1":[[[]],[[1,0]]]})", // wrong shape
                          R"({"m1_tops":[5],"m0_tops":[]})",                // vertex out of range
                          R"({"m1":[1,0],"m0":[1,0],"d1":[[[1]],[[1]]],"d0":[[[1]],[[1]]]})",  // d∘d ≠ 0
                          R"({"m1":"x"})"}) {
    EXPECT_THROW(complex_from_json(e.cx, json::parse(bad)), InvalidComplex) << bad;
  }
}

TEST(JsonOutput, Coefficients) {
  EXPECT_EQ(to_json(Coeff(mpq_class(3, 4))), "3/4");
  Env e("a2", 2);
  const auto j = to_json(e.hall.star(e.hall.symbol(e.simple(0)), e.hall.symbol(e.simple(1))));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 2u);
  for (const auto& term : j) EXPECT_EQ(term.at("coeff"), "0 + 1/2*t");
}

TEST(JsonOutput, Tables) {
  Env e("a1", 2);
  const auto t = export_tables(e.dh, 2);
  EXPECT_EQ(t.at("basis"), json::array({"(0)#0", "(1)#0", "(2)#0"}));
  bool found = false;
  for (const auto& r : t.at("multiplication"))
    if (r.at("op") == "diamond" && r.at("left") == "[(1)#0]" && r.at("right") == "[(1)#0]") {
      found = true;
      EXPECT_EQ(r.at("result"), json::array({{{"label", "(2)#0"}, {"k", {0}}, {"coeff", "1/2"}}}));
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(t.at("coproduct").size(), 6u);
  EXPECT_EQ(t.at("pairing").size(), 3u);
  EXPECT_EQ(export_tables(e.dh, 2), t);  // deterministic
}

}  // namespace
