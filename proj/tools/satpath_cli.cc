// Command-line front end: gen, solve, path, verify, simulate, batch.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 solver or Worse-search incompleteness.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satpath/dynamics.h"
#include "satpath/errors.h"
#include "satpath/game.h"
#include "satpath/game_io.h"
#include "satpath/nash_solver.h"
#include "satpath/random.h"
#include "satpath/satisficing.h"
#include "satpath/trace_io.h"

namespace satpath {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr int kExitIncomplete = 3;

// Salt that separates the initial-profile stream from the search streams.
constexpr std::uint64_t kInitSalt = 0x1417;

struct Options {
  std::string game;
  std::vector<std::string> games;
  double eps = -1.0;  // negative: use the command's default
  std::uint64_t seed = 0;
  int budget = WorseSearchConfig{}.budget;
  int max_steps = 1000;
  std::string format = "csv";
  std::string out = "-";
  std::string init = "random";
  std::string explorer = "dirichlet_uniform";
  double mixture_weight = 0.5;
  int trials = 100;
  int players = 2;
  std::vector<int> actions = {2};
  std::string trace;
  bool allow_nonterminal = false;
  bool length_bound = false;
};

double EpsOr(const Options& o, double fallback) {
  return o.eps < 0.0 ? fallback : o.eps;
}

std::vector<int> ParseActionList(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size()) {
      throw InvalidInput("bad action index '" + field + "'");
    }
    out.push_back(v);
  }
  return out;
}

// "uniform", "random" (a seeded Dirichlet draw per player) or
// "pure:a0,a1,...".
StrategyProfile InitialProfile(const Game& game, const Options& o) {
  if (o.init == "uniform") return UniformProfile(game);
  if (o.init == "random") {
    Rng rng(DeriveSeed(o.seed, kInitSalt));
    return SampleInitialProfile(game, ExplorerPolicy{}, rng);
  }
  if (o.init.rfind("pure:", 0) == 0) {
    const std::vector<int> actions = ParseActionList(o.init.substr(5));
    if (static_cast<int>(actions.size()) != game.num_players()) {
      throw InvalidInput("--init pure: needs one action per player");
    }
    for (int i = 0; i < game.num_players(); ++i) {
      if (actions[i] < 0 || actions[i] >= game.num_actions(i)) {
        throw InvalidInput("--init pure: action out of range for player " +
                           std::to_string(i));
      }
    }
    return PureProfile(game, actions);
  }
  throw InvalidInput("unknown --init '" + o.init +
                     "' (uniform, random, or pure:a0,a1,...)");
}

ExplorerPolicy MakeExplorer(const Options& o) {
  ExplorerPolicy e;
  e.kind = ExplorerKindFromName(o.explorer);
  e.mixture_weight = o.mixture_weight;
  e.Validate();
  return e;
}

// Writes through a buffer so a failing command leaves no partial output.
template <typename Fn>
void WriteOut(const std::string& destination, Fn&& write) {
  std::ostringstream buffer;
  write(buffer);
  if (destination == "-") {
    std::cout << buffer.str() << std::flush;
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(destination, std::ios::binary);
  if (!file) throw IoError("cannot open '" + destination + "' for writing");
  file << buffer.str();
  if (!file) throw IoError("failed writing '" + destination + "'");
}

int RunGen(const Options& o) {
  std::vector<int> counts = o.actions;
  if (counts.size() == 1 && o.players > 1) counts.assign(o.players, counts[0]);
  const Game game = GenerateRandomGame(o.players, counts, o.seed);
  WriteOut(o.out, [&](std::ostream& out) { out << GameToJson(game); });
  return kExitOk;
}

int RunSolve(const Options& o) {
  const Game game = LoadGame(o.game);
  SolverConfig config;
  if (o.eps >= 0.0) config.tolerance = o.eps;
  const StrategyProfile x = FindNash(game, config);
  const double gap = MaxDeviationGap(game, x);
  WriteOut(o.out, [&](std::ostream& out) {
    WriteProfile(x, gap, OutputFormatFromName(o.format), out);
  });
  return kExitOk;
}

int RunPath(const Options& o) {
  const Game game = LoadGame(o.game);
  const OutputFormat format = OutputFormatFromName(o.format);
  WorseSearchConfig worse;
  worse.budget = o.budget;
  worse.rng_seed = o.seed;
  const StrategyProfile x1 = InitialProfile(game, o);
  const SatisficingPath path =
      ConstructPath(game, x1, EpsOr(o, kDefaultSatisfactionTolerance), worse);
  WriteOut(o.out, [&](std::ostream& out) { WritePath(path, format, out); });
  return kExitOk;
}

int RunVerify(const Options& o) {
  const Game game = LoadGame(o.game);
  const TraceDocument trace = LoadTrace(o.trace);
  const double eps =
      EpsOr(o, trace.epsilon.value_or(kDefaultSatisfactionTolerance));
  const PathVerification result =
      VerifyPath(game, trace.profiles, eps, !o.allow_nonterminal,
                 o.length_bound);
  if (result.ok) {
    std::cout << "ok: " << trace.profiles.size()
              << " profiles satisfy the satisficing constraint\n";
    return kExitOk;
  }
  std::cout << "violation: " << result.violation->message << "\n";
  return kExitVerification;
}

int RunSimulate(const Options& o) {
  const Game game = LoadGame(o.game);
  const OutputFormat format = OutputFormatFromName(o.format);
  const ExplorerPolicy explorer = MakeExplorer(o);
  const StrategyProfile x1 = InitialProfile(game, o);
  const Trajectory t =
      RunDynamics(game, x1, EpsOr(o, kDefaultDynamicsTolerance), o.max_steps,
                  explorer, o.seed);
  WriteOut(o.out, [&](std::ostream& out) { WriteTrajectory(t, format, out); });
  return kExitOk;
}

int RunBatch(const Options& o) {
  const OutputFormat format = OutputFormatFromName(o.format);
  const ExplorerPolicy explorer = MakeExplorer(o);
  std::vector<Game> games;
  for (const auto& path : o.games) games.push_back(LoadGame(path));
  const auto rows =
      BatchExperiment(games, o.trials, EpsOr(o, kDefaultDynamicsTolerance),
                      explorer, o.max_steps, o.seed);
  WriteOut(o.out, [&](std::ostream& out) { WriteBatch(rows, format, out); });
  return kExitOk;
}

void AddEps(CLI::App* cmd, Options& o, const std::string& help) {
  cmd->add_option("--eps", o.eps, help)->check(CLI::NonNegativeNumber);
}
void AddFormat(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format: csv or json")
      ->capture_default_str();
}
void AddOut(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output file, '-' for stdout")
      ->capture_default_str();
}
void AddSeed(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}
void AddExplorer(CLI::App* cmd, Options& o) {
  cmd->add_option("--explorer", o.explorer,
                  "dirichlet_uniform, pure_uniform, or mixture_with_current")
      ->capture_default_str();
  cmd->add_option("--mixture-weight", o.mixture_weight,
                  "Weight on the fresh draw for mixture_with_current")
      ->capture_default_str();
  cmd->add_option("--max-steps", o.max_steps, "Maximum number of updates")
      ->capture_default_str();
}

int Main(int argc, char** argv) {
  CLI::App app{"Satisficing paths to Nash equilibrium in normal-form games"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate a random game");
  gen->add_option("--players", o.players, "Number of players")
      ->capture_default_str();
  gen->add_option("--actions", o.actions,
                  "Action count per player (one value applies to all)")
      ->delimiter(',')
      ->capture_default_str();
  AddSeed(gen, o);
  AddOut(gen, o);

  auto* solve = app.add_subcommand("solve", "Find a Nash equilibrium");
  solve->add_option("--game", o.game, "Game JSON file")->required();
  AddEps(solve, o, "Accepted max deviation gap (default 1e-9)");
  AddFormat(solve, o);
  AddOut(solve, o);

  auto* path = app.add_subcommand("path", "Construct a satisficing path");
  path->add_option("--game", o.game, "Game JSON file")->required();
  AddEps(path, o, "Satisfaction tolerance (default 1e-9)");
  AddSeed(path, o);
  path->add_option("--budget", o.budget, "Worse-search candidate budget")
      ->capture_default_str();
  path->add_option("--init", o.init,
                   "Initial profile: uniform, random, or pure:a0,a1,...")
      ->capture_default_str();
  AddFormat(path, o);
  AddOut(path, o);

  auto* verify = app.add_subcommand("verify", "Check a trace file");
  verify->add_option("trace", o.trace, "CSV or JSON trace")->required();
  verify->add_option("--game", o.game, "Game JSON file")->required();
  AddEps(verify, o, "Satisfaction tolerance (default: the trace's, else 1e-9)");
  verify->add_flag("--allow-nonterminal", o.allow_nonterminal,
                   "Do not require the last profile to be epsilon-Nash");
  verify->add_flag("--length-bound", o.length_bound,
                   "Also require at most n + 1 profiles");

  auto* simulate = app.add_subcommand("simulate", "Run win-stay lose-shift");
  simulate->add_option("--game", o.game, "Game JSON file")->required();
  AddEps(simulate, o, "Satisfaction tolerance (default 1e-6)");
  AddSeed(simulate, o);
  simulate->add_option("--init", o.init,
                       "Initial profile: uniform, random, or pure:a0,a1,...")
      ->capture_default_str();
  AddExplorer(simulate, o);
  AddFormat(simulate, o);
  AddOut(simulate, o);

  auto* batch = app.add_subcommand("batch", "Hitting-time experiment");
  batch->add_option("--game", o.games, "Game JSON file (repeatable)")
      ->required();
  AddEps(batch, o, "Satisfaction tolerance (default 1e-6)");
  AddSeed(batch, o);
  batch->add_option("--trials", o.trials, "Trials per game")
      ->capture_default_str();
  AddExplorer(batch, o);
  AddFormat(batch, o);
  AddOut(batch, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*gen) return RunGen(o);
    if (*solve) return RunSolve(o);
    if (*path) return RunPath(o);
    if (*verify) return RunVerify(o);
    if (*simulate) return RunSimulate(o);
    if (*batch) return RunBatch(o);
  } catch (const WorseSearchIncomplete& e) {
    std::cerr << "incomplete: " << e.what() << " (partial path of "
              << e.partial_path().length() << " profiles)\n";
    return kExitIncomplete;
  } catch (const SolverIncomplete& e) {
    std::cerr << "incomplete: " << e.what() << "\n";
    return kExitIncomplete;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace
}  // namespace satpath

int main(int argc, char** argv) { return satpath::Main(argc, argv); }
