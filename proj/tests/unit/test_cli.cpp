#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kplan/cli.hpp"
#include "kplan/complexity.hpp"
#include "kplan/export.hpp"
#include "kplan/gridworld.hpp"
#include "kplan/planner_dp.hpp"

namespace kplan {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation kplan(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kplan_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const json& doc, const std::string& name = "config.json") {
    const fs::path p = dir_ / name;
    std::ofstream(p) << doc.dump();
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, EstimateLz76) {
  const auto r = kplan({"estimate", "--est", "lz76", "000000"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "estimator,length,bits\nlz76,6," +
                       format_number(lz76_bits(ActionSequence(6, 0))) + "\n");
  EXPECT_EQ(kplan({"estimate", ""}).out, "estimator,length,bits\nlz76,0,0\n");
}

TEST_F(CliTest, EstimateErrors) {
  EXPECT_EQ(kplan({"estimate", "0157"}).code, cli::kInputError);
  EXPECT_EQ(kplan({"estimate", "01x"}).code, cli::kInputError);
  EXPECT_EQ(kplan({"estimate", "--est", "gzip", "01"}).code, cli::kInputError);
  EXPECT_EQ(kplan({"nonsense"}).code, cli::kInputError);
  EXPECT_EQ(kplan({}).code, cli::kInputError);
  EXPECT_EQ(kplan({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, EstimateBdmWithTableFile) {
  const fs::path table = dir_ / "ctm.json";
  save_ctm_table(synthetic_ctm_table(5, 3), table);
  const auto r = kplan({"estimate", "--est", "bdm", "--table", table.string(), "012012"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bdm(l=3),6,"), std::string::npos);
  const fs::path seq = dir_ / "seq.txt";
  std::ofstream(seq) << "012012\n";
  EXPECT_EQ(kplan({"estimate", "--est", "bdm", "--table", table.string(), "--file", seq.string()}).out,
            r.out);
  EXPECT_EQ(kplan({"estimate", "--est", "bdm", "--table", "synthetic", "--block-length", "3", "012012"}).out,
            r.out);
}

TEST_F(CliTest, EstimateBdmReadsTableFromEnvironment) {
  const fs::path table = dir_ / "env_ctm.json";
  save_ctm_table(synthetic_ctm_table(5, 3), table);
  ::unsetenv("KPLAN_CTM_TABLE");
  EXPECT_EQ(kplan({"estimate", "--est", "bdm", "012"}).code, cli::kInputError);
  ::setenv("KPLAN_CTM_TABLE", table.c_str(), 1);
  const auto r = kplan({"estimate", "--est", "bdm", "012"});
  ::unsetenv("KPLAN_CTM_TABLE");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("bdm(l=3)"), std::string::npos);
}

TEST_F(CliTest, GenRoom) {
  const fs::path out = dir_ / "room.json";
  EXPECT_EQ(kplan({"gen-room", "--n", "10", "--goal", "corner", "--out", out.string()}).code, 0);
  EXPECT_EQ(load_dfa(out).horizon(), 17u);
  EXPECT_EQ(kplan({"gen-room", "--n", "60", "--goal", "middle", "--horizon", "119", "--out", out.string()}).code, 0);
  EXPECT_EQ(load_dfa(out).horizon(), 119u);
  const auto info = grid_info_from_json(slurp(out));
  ASSERT_TRUE(info);
  EXPECT_EQ(info->goal, (Coord{30, 30}));
  EXPECT_EQ(kplan({"gen-room", "--n", "1"}).code, cli::kInputError);
  EXPECT_EQ(kplan({"gen-room", "--n", "4", "--goal", "9,9"}).code, cli::kInputError);
  EXPECT_EQ(kplan({"gen-room", "--n", "4", "--goal", "nowhere"}).code, cli::kInputError);
}

TEST_F(CliTest, PlanCopsN3) {
  const auto cfg = write_config({{"room", {{"n", 3}}}, {"output", "out"}});
  const auto r = kplan({"plan-cops", "--config", cfg.string(), "--solutions", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string seqs = slurp(dir_ / "out" / "sequences.csv");
  EXPECT_EQ(line_count(seqs), 7u);
  EXPECT_EQ(seqs.substr(0, 24), "rank,complexity,actions\n");
  const Room room = build_room({.n = 3});
  std::istringstream rows(seqs);
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) {
    const auto actions = line.substr(line.rfind(',') + 1);
    EXPECT_EQ(total_reward(room.dfa, room.start, from_digits(actions, 5)), 1.0);
  }
  EXPECT_EQ(line_count(slurp(dir_ / "out" / "trajectories.csv")), 1u + 6 * 5);
  const auto stats = json::parse(slurp(dir_ / "out" / "stats.json"));
  EXPECT_EQ(stats["solutions_found"], 6);
  EXPECT_EQ(stats["truncated"], false);
  EXPECT_TRUE(stats.contains("wall_time"));
  EXPECT_TRUE(stats.contains("nodes_expanded"));
}

TEST_F(CliTest, PlanCopsSingleActionDfa) {
  const fs::path dfa = dir_ / "one.json";
  save_dfa(TimedDfa::time_invariant(2, 1, 3, {1, 0}, {1.0, 0.0}), dfa);
  const auto cfg = write_config({{"dfa", "one.json"}, {"cops", {{"solutions", 1}}}, {"output", "o"}});
  ASSERT_EQ(kplan({"plan-cops", "--config", cfg.string()}).code, 0);
  EXPECT_EQ(slurp(dir_ / "o" / "sequences.csv"),
            "rank,complexity,actions\n1," + format_number(lz76_bits(ActionSequence(4, 0))) + ",0000\n");
  EXPECT_EQ(slurp(dir_ / "o" / "trajectories.csv").substr(0, 13), "rank,t,state\n");
}

TEST_F(CliTest, PlanCopsBudgetExhaustion) {
  const auto cfg = write_config({{"room", {{"n", 4}}}, {"output", "b"}});
  const auto r = kplan({"plan-cops", "--config", cfg.string(), "--solutions", "5", "--budget", "2"});
  EXPECT_EQ(r.code, cli::kBudgetExhausted);
  EXPECT_EQ(slurp(dir_ / "b" / "sequences.csv"), "rank,complexity,actions\n");
  EXPECT_EQ(json::parse(slurp(dir_ / "b" / "stats.json"))["truncated"], true);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRunsAndThreadCaps) {
  const auto cfg = write_config({{"room", {{"n", 5}}}, {"cops", {{"solutions", 10}}}});
  ASSERT_EQ(kplan({"plan-cops", "--config", cfg.string(), "--out", (dir_ / "a").string(), "--threads", "1"}).code, 0);
  ASSERT_EQ(kplan({"plan-cops", "--config", cfg.string(), "--out", (dir_ / "b").string(), "--threads", "3"}).code, 0);
  for (const char* f : {"sequences.csv", "trajectories.csv"}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
  auto a = json::parse(slurp(dir_ / "a" / "stats.json"));
  auto b = json::parse(slurp(dir_ / "b" / "stats.json"));
  a.erase("wall_time");
  b.erase("wall_time");
  EXPECT_EQ(a, b);
}

TEST_F(CliTest, PlanScapInfiniteLimitMatchesPlainDp) {
  const json room{{"n", 8}, {"horizon", 14}};
  const auto dp_cfg = write_config({{"room", room}, {"output", "dp"}}, "dp.json");
  ASSERT_EQ(kplan({"plan-dp", "--config", dp_cfg.string()}).code, 0);
  const auto hard = write_config({{"room", room}, {"scap", {{"l", 3}, {"limits", "inf"}}}, {"output", "hard"}},
                                 "hard.json");
  ASSERT_EQ(kplan({"plan-scap", "--config", hard.string()}).code, 0);
  const auto soft = write_config(
      {{"room", room}, {"scap", {{"l", 3}, {"mode", "soft"}, {"betas", 0}}}, {"output", "soft"}},
      "soft.json");
  ASSERT_EQ(kplan({"plan-scap", "--config", soft.string()}).code, 0);
  const std::string expect = slurp(dir_ / "dp" / "v0_heatmap.csv");
  EXPECT_EQ(slurp(dir_ / "hard" / "v0_heatmap.csv"), expect);
  EXPECT_EQ(slurp(dir_ / "soft" / "v0_heatmap.csv"), expect);
  EXPECT_EQ(slurp(dir_ / "hard" / "v0_heatmap.pgm"), slurp(dir_ / "dp" / "v0_heatmap.pgm"));
  EXPECT_TRUE(fs::exists(dir_ / "hard" / "stage_4_heatmap.csv"));
  EXPECT_EQ(slurp(dir_ / "hard" / "admissible.csv").substr(0, 17), "stage,size,limit\n");
}

TEST_F(CliTest, PlanScapConstantMacros) {
  const auto cfg = write_config(
      {{"room", {{"n", 8}, {"horizon", 14}}},
       {"estimator", {{"kind", "bdm"}, {"table", "synthetic"}, {"block_length", 1}}},
       {"scap", {{"l", 3}, {"limits", "constant"}, {"starts", {{2, 5}, {4, 4}}}}},
       {"output", "c"}});
  const auto r = kplan({"plan-scap", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir_ / "c" / "admissible.csv").substr(17, 4), "0,5,");
  const std::string plans = slurp(dir_ / "c" / "plans.csv");
  EXPECT_NE(plans.find("0,2,5,7,7,"), std::string::npos) << plans;
  EXPECT_NE(plans.find("1,4,4,6,6,"), std::string::npos) << plans;
}

TEST_F(CliTest, PlanScapInfeasibleStage) {
  const auto cfg = write_config({{"room", {{"n", 8}, {"horizon", 14}}},
                                 {"scap", {{"l", 3}, {"limits", {"inf", "inf", 0.5, "inf", "inf"}}}}});
  const auto r = kplan({"plan-scap", "--config", cfg.string(), "--out", (dir_ / "x").string()});
  EXPECT_EQ(r.code, cli::kInfeasibleStage);
  EXPECT_NE(r.err.find("stage 2"), std::string::npos);
}

TEST_F(CliTest, ConfigErrors) {
  EXPECT_EQ(kplan({"plan-dp", "--config", (dir_ / "missing.json").string()}).code, cli::kInputError);
  const auto bad = dir_ / "bad.json";
  std::ofstream(bad) << "{ nope";
  EXPECT_EQ(kplan({"plan-dp", "--config", bad.string()}).code, cli::kInputError);
  const auto no_env = write_config({{"output", "x"}}, "empty.json");
  EXPECT_EQ(kplan({"plan-dp", "--config", no_env.string()}).code, cli::kInputError);
  const auto bad_l = write_config({{"room", {{"n", 8}, {"horizon", 14}}}, {"scap", {{"l", 4}}}}, "l.json");
  EXPECT_EQ(kplan({"plan-scap", "--config", bad_l.string()}).code, cli::kInputError);
}

TEST_F(CliTest, PlanDpWritesValues) {
  const auto cfg = write_config({{"room", {{"n", 3}}}, {"output", "v"}});
  const auto r = kplan({"plan-dp", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "V0(1,1) = 1\n");
  EXPECT_EQ(line_count(slurp(dir_ / "v" / "values.csv")), 1u + 5 * 9);
}

}  // namespace
}  // namespace kplan
