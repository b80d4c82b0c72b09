#include <benchmark/benchmark.h>

#include "satpath/dynamics.h"
#include "satpath/game_io.h"
#include "satpath/nash_solver.h"
#include "satpath/random.h"
#include "satpath/satisficing.h"

namespace {

using namespace satpath;

Game SquareGame(int players, int actions) {
  return GenerateRandomGame(players, std::vector<int>(players, actions), 1);
}

StrategyProfile RandomProfile(const Game& game, std::uint64_t seed) {
  Rng rng(seed);
  return SampleInitialProfile(game, ExplorerPolicy{}, rng);
}

void BM_ExpectedReward(benchmark::State& state) {
  const Game game = SquareGame(state.range(0), state.range(1));
  const StrategyProfile x = RandomProfile(game, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExpectedReward(game, x, 0));
  }
  state.SetItemsProcessed(state.iterations() * game.num_profiles());
}
BENCHMARK(BM_ExpectedReward)->ArgsProduct({{2, 3, 4, 6}, {2, 4, 6}});

void BM_DeviationGap(benchmark::State& state) {
  const Game game = SquareGame(state.range(0), state.range(1));
  const StrategyProfile x = RandomProfile(game, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MaxDeviationGap(game, x));
  }
}
BENCHMARK(BM_DeviationGap)->ArgsProduct({{2, 3, 4}, {2, 3}});

void BM_FindNash(benchmark::State& state) {
  const Game game = SquareGame(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FindNash(game));
  }
}
BENCHMARK(BM_FindNash)
    ->Args({2, 2})
    ->Args({2, 4})
    ->Args({2, 6})
    ->Args({3, 2})
    ->Args({3, 3})
    ->Args({4, 2})
    ->Unit(benchmark::kMicrosecond);

void BM_ConstructPath(benchmark::State& state) {
  const Game game = SquareGame(state.range(0), state.range(1));
  std::vector<int> zeros(game.num_players(), 0);
  const StrategyProfile x1 = PureProfile(game, zeros);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ConstructPath(game, x1));
  }
}
BENCHMARK(BM_ConstructPath)
    ->Args({2, 2})
    ->Args({3, 2})
    ->Args({3, 3})
    ->Args({4, 2})
    ->Unit(benchmark::kMicrosecond);

void BM_RunDynamics(benchmark::State& state) {
  const Game game = SquareGame(3, 3);
  const StrategyProfile x1 = RandomProfile(game, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RunDynamics(game, x1, 1e-9, state.range(0), ExplorerPolicy{}, 5));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunDynamics)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
