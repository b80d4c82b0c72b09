// Runs the satpath binary end to end. SATPATH_CLI is the path of the built
// executable.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "satpath/fixtures.h"
#include "satpath/game_io.h"

namespace satpath {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("satpath_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string File(const std::string& name) const {
    return (dir_ / name).string();
  }

  // Runs the CLI with stdout and stderr sent to files; returns the exit code.
  int Run(const std::string& args) {
    const std::string cmd = std::string(SATPATH_CLI) + " " + args + " > " +
                            File("stdout") + " 2> " + File("stderr");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string Read(const std::string& path) const {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::string Stdout() const { return Read(File("stdout")); }

  fs::path dir_;
};

TEST_F(CliTest, GenSolveRoundTrip) {
  ASSERT_EQ(Run("gen --players 2 --actions 2 --seed 4 --out " + File("g.json")), 0);
  const Game g = LoadGame(File("g.json"));
  EXPECT_EQ(g, GenerateRandomGame(2, {2, 2}, 4));
  ASSERT_EQ(Run("solve --game " + File("g.json") + " --format json"), 0);
  EXPECT_NE(Stdout().find("\"kind\": \"equilibrium\""), std::string::npos);
}

TEST_F(CliTest, PathThenVerifySucceeds) {
  SaveGame(MatchingPennies(), File("mp.json"));
  for (const std::string format : {"csv", "json"}) {
    const std::string trace = File("path." + format);
    ASSERT_EQ(Run("path --game " + File("mp.json") + " --init pure:0,0 --format " +
                  format + " --out " + trace),
              0);
    EXPECT_EQ(Run("verify " + trace + " --game " + File("mp.json") +
                  " --length-bound"),
              0)
        << Stdout();
  }
}

TEST_F(CliTest, VerifyReportsViolations) {
  SaveGame(MatchingPennies(), File("mp.json"));
  // Player 0 is satisfied at (H, H) but moves to (1/2, 1/2).
  std::ofstream(File("bad.csv"))
      << "step,step_kind,player,action,probability,gap,satisfied\n"
         "1,initial,0,0,1,0,1\n1,initial,0,1,0,0,1\n"
         "1,initial,1,0,1,2,0\n1,initial,1,1,0,2,0\n"
         "2,worse_step,0,0,0.5,0,1\n2,worse_step,0,1,0.5,0,1\n"
         "2,worse_step,1,0,0.5,0,1\n2,worse_step,1,1,0.5,0,1\n";
  EXPECT_EQ(Run("verify " + File("bad.csv") + " --game " + File("mp.json")), 1);
  EXPECT_NE(Stdout().find("player 0"), std::string::npos);
  // A non-equilibrium endpoint fails unless explicitly allowed.
  std::ofstream(File("short.csv"))
      << "step,step_kind,player,action,probability,gap,satisfied\n"
         "1,initial,0,0,1,0,1\n1,initial,0,1,0,0,1\n"
         "1,initial,1,0,1,2,0\n1,initial,1,1,0,2,0\n";
  EXPECT_EQ(Run("verify " + File("short.csv") + " --game " + File("mp.json")), 1);
  EXPECT_EQ(Run("verify " + File("short.csv") + " --game " + File("mp.json") +
                " --allow-nonterminal"),
            0);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  SaveGame(MatchingPennies(), File("mp.json"));
  EXPECT_EQ(Run("solve --game " + File("missing.json")), 2);
  EXPECT_EQ(Run("path --game " + File("mp.json") + " --init pure:0"), 2);
  EXPECT_EQ(Run("path --game " + File("mp.json") + " --format xml"), 2);
  EXPECT_EQ(Run("path --game " + File("mp.json") + " --budget 0"), 2);
  EXPECT_EQ(Run("simulate --game " + File("mp.json") + " --explorer greedy"), 2);
  EXPECT_EQ(Run("gen --players 9"), 2);
  EXPECT_EQ(Run("frobnicate"), 2);
  EXPECT_EQ(Run(""), 2);
  std::ofstream(File("broken.json")) << R"({"players": 2, "actions": [2, 2],
                                          "payoffs": [[1, 2], [1, 2, 3, 4]]})";
  EXPECT_EQ(Run("solve --game " + File("broken.json")), 2);
  EXPECT_NE(Read(File("stderr")).find("payoffs[0]"), std::string::npos);
  EXPECT_EQ(Run("verify " + File("missing.csv") + " --game " + File("mp.json")), 2);
}

TEST_F(CliTest, SearchIncompletenessExitsThree) {
  // The Worse region from (a0, H) is a sliver of width ~1e-8 that a budget
  // of one candidate per search never finds.
  SaveGame(Game({2, 2}, {{1.0, 0.0, 0.0, 1e-8}, {0.0, 1.0, 1.0, 0.0}}),
           File("thin.json"));
  EXPECT_EQ(Run("path --game " + File("thin.json") +
                " --init pure:0,0 --budget 1"),
            3);
  EXPECT_NE(Read(File("stderr")).find("incomplete"), std::string::npos);
}

TEST_F(CliTest, CommandsAreByteIdenticalAcrossRuns) {
  ASSERT_EQ(Run("gen --players 3 --actions 2,3,2 --seed 11 --out " + File("g.json")), 0);
  const std::string g = " --game " + File("g.json");
  const std::string commands[] = {
      "gen --players 3 --actions 3 --seed 5",
      "solve" + g + " --format json",
      "path" + g + " --seed 9 --format csv",
      "path" + g + " --seed 9 --init pure:1,2,0 --format json",
      "simulate" + g + " --seed 3 --eps 0.05 --max-steps 300 --format csv",
      "simulate" + g + " --seed 3 --explorer mixture_with_current --format json",
      "batch" + g + g + " --trials 20 --eps 0.05 --max-steps 200 --seed 8",
  };
  for (const auto& cmd : commands) {
    ASSERT_EQ(Run(cmd), 0) << cmd;
    const std::string first = Stdout();
    ASSERT_EQ(Run(cmd), 0) << cmd;
    EXPECT_EQ(Stdout(), first) << cmd;
    EXPECT_FALSE(first.empty()) << cmd;
  }
}

}  // namespace
}  // namespace satpath
