#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quote(const std::string& s) {
  std::string r = "'";
  for (char c : s) r += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return r + "'";
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    tmp_ = fs::temp_directory_path() /
           ("hallforge-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(tmp_);
    fs::create_directories(tmp_);
  }
  void TearDown() override { fs::remove_all(tmp_); }

  CliResult run(const std::vector<std::string>& args, const std::string& env = "") const {
    std::string cmd = env.empty() ? "env -u HALLFORGE_CACHE_DIR " : "env " + env + " ";
    cmd += quote(HALLFORGE_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " >" + quote((tmp_ / "stdout").string()) + " 2>" + quote((tmp_ / "stderr").string());
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(tmp_ / "stdout");
    r.err = slurp(tmp_ / "stderr");
    return r;
  }

  fs::path tmp_;
};

json without_runtime(json j) {
  j.erase("runtime");
  return j;
}

TEST_F(Cli, VerifyPassesWithExitZero) {
  const auto r = run({"verify", "--quiver", "a2", "--q", "2", "--max-dim", "2", "--suite", "hall-assoc", "--suite",
                      "pairing", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("status"), "pass");
  EXPECT_EQ(j.at("suites").size(), 2u);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"verify", "--quiver", "a2", "--q", "11", "--suite", "pairing"}).code, 2);
  EXPECT_EQ(run({"verify", "--quiver", "e8", "--suite", "pairing"}).code, 2);
  EXPECT_EQ(run({"verify", "--quiver", "a2", "--suite", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--quiver", "a2"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"decompose", "--quiver", "a2", "{\"m1\":[0,1],\"m0\":[1,0],\"d1\":[[[]],[[7]]]}"}).code, 2);
  EXPECT_EQ(run({"mul", "--quiver", "a2", "--algebra", "diamond", "K(1,0)", "[(1,0)#0]"}).code, 2);
  const auto bad = run({"verify", "--quiver", "a2", "--q", "11", "--suite", "pairing"});
  EXPECT_NE(bad.err.find("q"), std::string::npos);
}

TEST_F(Cli, BudgetExceededExitsThreeWithPartialReport) {
  const auto out = (tmp_ / "report.json").string();
  const auto r = run({"verify", "--quiver", "a2", "--q", "3", "--max-dim", "3", "--suite", "hall-assoc", "--suite",
                      "pairing", "--budget", "20", "--no-cache", "--out", out});
  ASSERT_EQ(r.code, 3) << r.err;
  const auto j = json::parse(slurp(out));
  EXPECT_EQ(j.at("status"), "budget_exceeded");
  EXPECT_TRUE(j.at("suites").at(0).contains("aborted"));
  EXPECT_EQ(j.at("skipped"), json::array({"pairing"}));
}

TEST_F(Cli, ReportsAreDeterministicAndCacheIsTransparent) {
  const std::vector<std::string> base{"verify", "--quiver", "a2", "--q", "2", "--max-dim", "2", "--kgrid", "1",
                                      "--suite", "double-relation"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  const auto cache = (tmp_ / "cache").string();
  const auto cold = run(with({"--cache-dir", cache}));
  ASSERT_EQ(cold.code, 0) << cold.err;
  const auto warm = run(with({"--cache-dir", cache}));
  ASSERT_EQ(warm.code, 0) << warm.err;
  const auto none = run(with({"--no-cache"}));
  ASSERT_EQ(none.code, 0) << none.err;
  EXPECT_EQ(without_runtime(cold.report()), without_runtime(warm.report()));
  EXPECT_EQ(without_runtime(cold.report()), without_runtime(none.report()));
  EXPECT_GT(cold.report().at("runtime").at("cache").at("writes"), 0);
  EXPECT_EQ(warm.report().at("runtime").at("cache").at("writes"), 0);
  EXPECT_GT(warm.report().at("runtime").at("cache").at("hits"), 0);

  // Corrupt every entry: warned about, recomputed, same report.
  for (const auto& f : fs::recursive_directory_iterator(cache))
    if (f.is_regular_file()) std::ofstream(f.path(), std::ios::trunc) << "garbage";
  const auto healed = run(with({"--cache-dir", cache}));
  ASSERT_EQ(healed.code, 0) << healed.err;
  EXPECT_NE(healed.err.find("corrupt"), std::string::npos);
  EXPECT_EQ(without_runtime(healed.report()), without_runtime(cold.report()));
  EXPECT_GT(healed.report().at("runtime").at("cache").at("writes"), 0);
}

TEST_F(Cli, CacheDirFromEnvironment) {
  const auto cache = tmp_ / "envcache";
  const auto r = run({"verify", "--quiver", "a1", "--q", "2", "--max-dim", "2", "--kgrid", "1", "--suite",
                      "double-relation"},
                     "HALLFORGE_CACHE_DIR=" + quote(cache.string()));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(cache));
  EXPECT_FALSE(fs::is_empty(cache));
}

TEST_F(Cli, TableOutput) {
  const auto r = run({"table", "--quiver", "a1", "--q", "2", "--max-dim", "2", "--no-cache"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  bool found = false;
  for (const auto& rec : j.at("tables").at("multiplication"))
    if (rec.at("op") == "diamond" && rec.at("left") == "[(1)#0]" && rec.at("right") == "[(1)#0]") {
      found = true;
      EXPECT_EQ(rec.at("result").at(0).at("coeff"), "1/2");
      EXPECT_EQ(rec.at("result").at(0).at("label"), "(2)#0");
    }
  EXPECT_TRUE(found);
}

TEST_F(Cli, DecomposeOutput) {
  const auto r = run({"decompose", "--quiver", "a2", "--no-cache", R"({"m1":[0,1],"m0":[1,0],"d1":[[[]],[[1]]]})"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j.at("homology"), json::array({"(1,0)#0", "(0,0)#0"}));
  EXPECT_EQ(j.at("exponent"), 0);
  EXPECT_EQ(j.at("roundtrip_isomorphic"), true);

  const auto path = tmp_ / "k.json";
  std::ofstream(path) << R"({"m1_tops":[1],"m0_tops":[1],"d1":[[],[[1]]]})";
  const auto k = run({"decompose", "--quiver", "a2", "--no-cache", path.string()});
  ASSERT_EQ(k.code, 0) << k.err;
  EXPECT_EQ(k.report().at("witness").at("p_class"), json::array({0, 1}));
}

TEST_F(Cli, MulOutput) {
  const auto r = run({"mul", "--quiver", "a2", "--q", "2", "--no-cache", "[(1,0)#0]", "[(0,1)#0]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = r.report().at("result");
  ASSERT_EQ(res.size(), 2u);
  for (const auto& t : res) EXPECT_EQ(t.at("coeff"), "0 + 1/2*t");

  const auto dh = run({"mul", "--quiver", "a1", "--q", "2", "--algebra", "dh", "--no-cache", "K(1)", "K*(1)"});
  ASSERT_EQ(dh.code, 0) << dh.err;
  EXPECT_EQ(dh.report().at("result").size(), 1u);
}

}  // namespace
