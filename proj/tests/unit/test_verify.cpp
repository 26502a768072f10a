#include <gtest/gtest.h>

#include <atomic>

#include "hallforge/verify.hpp"

using namespace hallforge;

namespace {

RunConfig small(std::string quiver, int q, int dim, std::vector<std::string> suites) {
  RunConfig c;
  c.quiver = std::move(quiver);
  c.q = q;
  c.max_total_dim = dim;
  c.kgrid = 1;
  c.suites = std::move(suites);
  return c;
}

TEST(Validate, RejectsBadConfigs) {
  EXPECT_NO_THROW(validate(small("a2", 2, 2, {"hall-assoc"}), true));
  EXPECT_THROW(validate(small("a2", 11, 2, {"hall-assoc"}), true), UsageError);
  EXPECT_THROW(validate(small("a2", 2, 2, {"nope"}), true), UsageError);
  EXPECT_THROW(validate(small("a2", 2, 2, {}), true), UsageError);
  EXPECT_NO_THROW(validate(small("a2", 2, 2, {}), false));
  EXPECT_THROW(validate(small("a2", 2, -1, {"pairing"}), true), UsageError);
  EXPECT_THROW(Workspace(small("no-such-quiver", 2, 2, {})), UsageError);
}

TEST(KnownSuites, Listed) {
  const std::vector<std::string> want{"hall-assoc", "bialgebra", "pairing", "complex-relations", "triangular",
                                      "double-relation"};
  EXPECT_EQ(known_suites(), want);
}

class EverySuite : public ::testing::TestWithParam<std::string> {};

TEST_P(EverySuite, PassesOnA2) {
  const Workspace ws(small("a2", 2, 2, {GetParam()}));
  const auto r = run_suite(ws, GetParam());
  EXPECT_FALSE(r.aborted.has_value());
  EXPECT_TRUE(r.passed()) << r.to_json().dump(1);
  EXPECT_FALSE(r.checks.empty());
  for (const auto& c : r.checks)
    if (c.gating) {
      EXPECT_GT(c.cases, 0u) << c.name;
    }
}

INSTANTIATE_TEST_SUITE_P(Suites, EverySuite,
                         ::testing::Values("hall-assoc", "bialgebra", "pairing", "complex-relations", "triangular",
                                           "double-relation"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& ch : s)
                             if (ch == '-') ch = '_';
                           return s;
                         });

TEST(RunVerify, ReportShape) {
  const Workspace ws(small("a1", 3, 2, {"hall-assoc", "pairing"}));
  const auto out = run_verify(ws);
  EXPECT_EQ(out.status, RunStatus::pass);
  const auto& j = out.report;
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_EQ(j.at("all_passed"), true);
  EXPECT_EQ(j.at("suites").size(), 2u);
  EXPECT_TRUE(j.at("runtime").contains("elapsed_ms"));
  EXPECT_EQ(j.at("config").at("q"), 3);

  auto a = run_verify(ws).report, b = out.report;
  a.erase("runtime");
  b.erase("runtime");
  EXPECT_EQ(a, b);
}

TEST(RunVerify, BudgetProducesPartialReport) {
  auto cfg = small("a2", 3, 3, {"hall-assoc", "pairing"});
  cfg.budget = 20;
  const Workspace ws(cfg);
  const auto out = run_verify(ws);
  EXPECT_EQ(out.status, RunStatus::budget_exceeded);
  EXPECT_EQ(out.report.at("all_passed"), false);
  EXPECT_TRUE(out.report.at("suites").at(0).contains("aborted"));
  EXPECT_EQ(out.report.at("skipped"), nlohmann::json::array({"pairing"}));
}

TEST(RunVerify, InformationalChecksDoNotGate) {
  const Workspace ws(small("a2", 2, 2, {"bialgebra"}));
  const auto r = run_suite(ws, "bialgebra");
  bool saw_failing_info = false;
  for (const auto& c : r.checks)
    if (!c.gating && !c.passed()) saw_failing_info = true;
  EXPECT_TRUE(saw_failing_info);  // literal coproduct is not multiplicative
  EXPECT_TRUE(r.passed());
}

TEST(ParallelFor, CoversRangeAndPropagatesErrors) {
  for (unsigned threads : {1u, 3u}) {
    std::vector<std::atomic<int>> hit(100);
    parallel_for(hit.size(), threads, [&](std::size_t i) { hit[i]++; });
    for (const auto& h : hit) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(10, threads,
                              [](std::size_t i) {
                                if (i == 7) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
  }
  EXPECT_NO_THROW(parallel_for(0, 2, [](std::size_t) {}));
}

TEST(MultiplicityVectors, CountsAndOrder) {
  const auto v = multiplicity_vectors(2, 2);
  EXPECT_EQ(v.size(), 6u);  // C(4,2)
  EXPECT_EQ(v.front(), (std::vector<long long>{0, 0}));
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  EXPECT_EQ(multiplicity_vectors(3, 0).size(), 1u);
}

TEST(EnumerateWitnesses, A1Counts) {
  QuiverCategory cat(Quiver::fixture("a1"), 2);
  ComplexCategory cx(cat);
  // |A| + |B| + |P| + |Q| <= 1: zero, A = k, B = k, P = P1, Q = P1
  EXPECT_EQ(enumerate_witnesses(cx, 1).size(), 5u);
}

}  // namespace
