#include "satpath/nash_solver.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "satpath/errors.h"
#include "satpath/fixtures.h"

namespace satpath {
namespace {

using testing::OracleGap;
using testing::OraclePurePayoffs;
using testing::OracleRandomCounts;
using testing::OracleRandomGame;
using testing::SolveTwoByTwo;

constexpr int H = 0, T = 1;
constexpr int D = 1;

void ExpectStrategyNear(const MixedStrategy& s, std::vector<double> want,
                        double tol) {
  ASSERT_EQ(s.num_actions(), static_cast<int>(want.size()));
  for (int a = 0; a < s.num_actions(); ++a) EXPECT_NEAR(s[a], want[a], tol);
}

double OracleMaxGap(const Game& g, const StrategyProfile& x) {
  double m = 0.0;
  for (int i = 0; i < g.num_players(); ++i) m = std::max(m, OracleGap(g, x, i));
  return m;
}

TEST(SolveOnSupportTest, NamedFixtures) {
  const Game mp = MatchingPennies();
  auto x = SolveOnSupport(mp, {{{0, 1}, {0, 1}}});
  ASSERT_TRUE(x.has_value());
  ExpectStrategyNear((*x)[0], {0.5, 0.5}, 1e-12);
  ExpectStrategyNear((*x)[1], {0.5, 0.5}, 1e-12);

  const Game pd = PrisonersDilemma();
  x = SolveOnSupport(pd, {{{D}, {D}}});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], MixedStrategy::Pure(2, D));
  EXPECT_EQ((*x)[1], MixedStrategy::Pure(2, D));

  EXPECT_FALSE(SolveOnSupport(pd, {{{0}, {0}}}).has_value());
}

TEST(SolveOnSupportTest, RejectsBadSupports) {
  const Game mp = MatchingPennies();
  EXPECT_THROW(SolveOnSupport(mp, {{{}, {0}}}), InvalidInput);
  EXPECT_THROW(SolveOnSupport(mp, {{{1, 0}, {0}}}), InvalidInput);
  EXPECT_THROW(SolveOnSupport(mp, {{{0, 0}, {0}}}), InvalidInput);
  EXPECT_THROW(SolveOnSupport(mp, {{{2}, {0}}}), InvalidInput);
  EXPECT_THROW(SolveOnSupport(mp, {{{0}}}), InvalidInput);
}

TEST(FindNashTest, NamedFixtures) {
  const Game mp = MatchingPennies();
  auto x = FindNash(mp);
  ExpectStrategyNear(x[0], {0.5, 0.5}, 1e-9);
  ExpectStrategyNear(x[1], {0.5, 0.5}, 1e-9);

  const Game rps = RockPaperScissors();
  x = FindNash(rps);
  ExpectStrategyNear(x[0], {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-9);
  ExpectStrategyNear(x[1], {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-9);

  const Game pd = PrisonersDilemma();
  x = FindNash(pd);
  EXPECT_EQ(x[0], MixedStrategy::Pure(2, D));
  EXPECT_EQ(x[1], MixedStrategy::Pure(2, D));
}

TEST(FindNashTest, MatchesTwoByTwoOracle) {
  std::mt19937_64 rng(77);
  int mixed_cases = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Game g = OracleRandomGame(rng, {2, 2});
    const auto want = SolveTwoByTwo(g);
    const auto x = FindNash(g);
    if (!want.pure.empty()) {
      const auto [a, b] = want.pure.front();
      ExpectStrategyNear(x[0], {a == 0 ? 1.0 : 0.0, a == 0 ? 0.0 : 1.0}, 1e-7);
      ExpectStrategyNear(x[1], {b == 0 ? 1.0 : 0.0, b == 0 ? 0.0 : 1.0}, 1e-7);
    } else {
      ++mixed_cases;
      const auto [p, q] = *want.mixed;
      ExpectStrategyNear(x[0], {p, 1 - p}, 1e-7);
      ExpectStrategyNear(x[1], {q, 1 - q}, 1e-7);
    }
  }
  // Roughly one random 2x2 game in eight has no pure equilibrium.
  EXPECT_GT(mixed_cases, 20);
}

TEST(FindNashTest, ResultsAreEquilibriaOnLargerGames) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    const Game g = OracleRandomGame(rng, OracleRandomCounts(rng, n, 2, 3));
    const auto x = FindNash(g);
    EXPECT_LE(OracleMaxGap(g, x), 1e-9) << "trial " << trial;
  }
}

TEST(FindNashTest, IsDeterministic) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = OracleRandomGame(rng, OracleRandomCounts(rng, 3, 2, 3));
    const auto a = FindNash(g);
    const auto b = FindNash(g);
    EXPECT_TRUE(a.BitwiseEquals(b));
  }
}

TEST(FindNashTest, SinglePlayerPicksFirstArgmax) {
  const Game g({3}, {{0.2, 0.7, 0.7}});
  const auto x = FindNash(g);
  EXPECT_EQ(x[0], MixedStrategy::Pure(3, 1));
}

TEST(FindNashTest, DegenerateGameStillSolves) {
  // All-zero payoffs: every profile is an equilibrium; the first support in
  // the enumeration order is pure action 0 for everyone.
  const Game g({2, 3}, {std::vector<double>(6, 0.0), std::vector<double>(6, 0.0)});
  const auto x = FindNash(g);
  EXPECT_EQ(x[0], MixedStrategy::Pure(2, 0));
  EXPECT_EQ(x[1], MixedStrategy::Pure(3, 0));
}

TEST(FindNashTest, SupportCapRaisesSolverIncomplete) {
  SolverConfig config;
  config.max_support_size = 1;
  try {
    FindNash(MatchingPennies(), config);
    FAIL() << "expected SolverIncomplete";
  } catch (const SolverIncomplete& e) {
    EXPECT_EQ(e.best_gap(), 2.0);
    EXPECT_EQ(e.best_candidate().num_players(), 2);
  }
}

TEST(SolverConfigTest, Validates) {
  SolverConfig c;
  c.tolerance = -1;
  EXPECT_THROW(c.Validate(), InvalidInput);
  c = {};
  c.max_support_size = -1;
  EXPECT_THROW(c.Validate(), InvalidInput);
  c = {};
  c.max_newton_iterations = 0;
  EXPECT_THROW(c.Validate(), InvalidInput);
}

TEST(FindSubgameNashTest, FrozenPlayerLeavesBestResponse) {
  const Game mp = MatchingPennies();
  const auto x =
      FindSubgameNash(mp, {{0, MixedStrategy::Pure(2, H)}});
  EXPECT_EQ(x[0], MixedStrategy::Pure(2, H));
  EXPECT_EQ(x[1], MixedStrategy::Pure(2, T));
}

TEST(FindSubgameNashTest, FreezingNobodyMatchesFindNash) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = OracleRandomGame(rng, OracleRandomCounts(rng, 3, 2, 3));
    EXPECT_TRUE(FindSubgameNash(g, {}).BitwiseEquals(FindNash(g)));
  }
}

TEST(FindSubgameNashTest, ThreePlayerAveragedArgmax) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const Game g = OracleRandomGame(rng, {3, 2, 3});
    const std::map<int, MixedStrategy> frozen = {
        {1, MixedStrategy::Uniform(2)}, {2, MixedStrategy::Uniform(3)}};
    const auto x = FindSubgameNash(g, frozen);
    EXPECT_TRUE(x[1].BitwiseEquals(MixedStrategy::Uniform(2)));
    EXPECT_TRUE(x[2].BitwiseEquals(MixedStrategy::Uniform(3)));
    // Averaged payoff vector of player 0 against the uniform opponents.
    const auto w = OraclePurePayoffs(g, x, 0);
    const int best =
        static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
    EXPECT_EQ(x[0], MixedStrategy::Pure(3, best));
  }
}

TEST(FindSubgameNashTest, FrozenStrategiesAreBitwiseCopies) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = OracleRandomGame(rng, OracleRandomCounts(rng, 4, 2, 3));
    const auto s = testing::OracleRandomStrategy(rng, g.num_actions(2));
    const auto x = FindSubgameNash(g, {{2, s}});
    EXPECT_TRUE(x[2].BitwiseEquals(s));
    for (int i : {0, 1, 3}) EXPECT_LE(OracleGap(g, x, i), 1e-9);
  }
}

TEST(FindSubgameNashTest, RejectsBadFrozenPlayers) {
  const Game mp = MatchingPennies();
  EXPECT_THROW(FindSubgameNash(mp, {{2, MixedStrategy::Uniform(2)}}),
               InvalidInput);
  EXPECT_THROW(FindSubgameNash(mp, {{0, MixedStrategy::Uniform(3)}}),
               InvalidInput);
}

TEST(ReduceGameTest, AveragesOverFrozenPlayers) {
  std::mt19937_64 rng(8);
  const Game g = OracleRandomGame(rng, {2, 3, 2});
  const auto s = testing::OracleRandomStrategy(rng, 3);
  const Game r = ReduceGame(g, {{1, s}});
  ASSERT_EQ(r.num_players(), 2);
  EXPECT_EQ(r.action_counts(), (std::vector<int>{2, 2}));
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < 2; ++i) {
        const int full_player = i == 0 ? 0 : 2;
        double want = 0.0;
        for (int b = 0; b < 3; ++b) {
          const int actions[] = {a, b, c};
          want += s[b] * g.payoff(full_player, actions);
        }
        const int reduced[] = {a, c};
        EXPECT_NEAR(r.payoff(i, reduced), want, 1e-15);
      }
    }
  }
}

TEST(VerifyNashTest, NamedFixtures) {
  const Game mp = MatchingPennies();
  EXPECT_TRUE(VerifyNash(mp, UniformProfile(mp), 1e-9));
  const int hh[] = {H, H};
  EXPECT_FALSE(VerifyNash(mp, PureProfile(mp, hh), 1e-9));
  EXPECT_TRUE(VerifyNash(mp, PureProfile(mp, hh), mp.PayoffSpread()));
}

}  // namespace
}  // namespace satpath
