#include "wlreg/cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "wlreg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = wlreg::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, NamedIntegral) {
  Outcome r = run({"integral", "I14"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "I14 = 1/24 * beta\n");
  EXPECT_EQ(run({"integral", "I14", "--ruleset", "modereg"}).out, "I14 = 1/12 * beta\n");
}

TEST(Cli, IntegralJsonAndMoves) {
  Outcome r = run({"integral", "I15", "--json", "--dump-moves"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"]["text"], "-1/8 * beta + 1/6 * beta^2 * delta0");
  EXPECT_EQ(j["method"], "dimreg");
  EXPECT_TRUE(j["move_log"].is_array());
  EXPECT_FALSE(j["move_log"].empty());
}

TEST(Cli, IntegrandExpressions) {
  EXPECT_EQ(run({"integral", "Dl(1,2)^2*Dr(1,2)^2"}).out, "Dl(1,2)^2*Dr(1,2)^2 = 1/90 * beta^2\n");
  Outcome direct = run({"integral", "eps(1,2)^2*delta(1,2)", "--json"});
  ASSERT_EQ(direct.code, 0);
  auto j = nlohmann::json::parse(direct.out);
  EXPECT_EQ(j["method"], "direct");
  EXPECT_EQ(j["value"]["text"], "0");
}

TEST(Cli, VerifyExitCodes) {
  Outcome flat = run({"verify", "--case", "flat", "--json"});
  EXPECT_EQ(flat.code, 0);
  auto j = nlohmann::json::parse(flat.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["status"], "pass");
  EXPECT_EQ(run({"verify", "--case", "flat", "--order", "2", "--ruleset", "modereg"}).code, 1);
  EXPECT_EQ(run({"verify", "--case", "catalog"}).code, 1);
  EXPECT_EQ(run({"verify", "--case", "falsification"}).code, 0);
  Outcome text = run({"verify", "--case", "legality"});
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("all checks passed"), std::string::npos);
}

TEST(Cli, CatalogAndMeasureAndSphere) {
  Outcome cat = run({"catalog", "--order", "1", "--model", R"({"model":"normal"})", "--json"});
  ASSERT_EQ(cat.code, 0);
  auto j = nlohmann::json::parse(cat.out);
  EXPECT_EQ(j[0]["model"], "normal");
  EXPECT_EQ(run({"measure-cancel", "--profile", "t/beta", "--max-order", "4"}).code, 0);
  EXPECT_EQ(run({"sphere", "--D", "3", "--beta", "0.01"}).code, 0);
}

TEST(Cli, InvalidInputIsExitTwo) {
  EXPECT_EQ(run({"integral", "D(1,2"}).code, 2);
  EXPECT_EQ(run({"integral", "I14", "--ruleset", "cutoff"}).code, 2);
  EXPECT_EQ(run({"verify", "--case", "nonsense"}).code, 2);
  EXPECT_EQ(run({"catalog", "--model", "{not json"}).code, 2);
  EXPECT_EQ(run({"catalog", "--model", R"({"model":"sphere","D":1})"}).code, 2);
  Outcome sphere = run({"sphere", "--lmax", "5"});
  EXPECT_EQ(sphere.code, 2);
  EXPECT_NE(sphere.err.find("l_max"), std::string::npos);
  EXPECT_EQ(run({"sphere", "--beta", "-1"}).code, 2);
  EXPECT_EQ(run({"measure-cancel", "--profile", "t^"}).code, 2);
  EXPECT_EQ(run({"measure-cancel", "--max-order", "12"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
