#include "satpath/game.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "satpath/errors.h"

namespace satpath {
namespace {

bool BitwiseEqual(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::bit_cast<std::uint64_t>(a[k]) !=
        std::bit_cast<std::uint64_t>(b[k])) {
      return false;
    }
  }
  return true;
}

// Advances `actions` to the next profile in row-major order (last player
// fastest). Returns false after the final profile.
bool NextProfile(std::vector<int>& actions, const std::vector<int>& counts) {
  for (int p = static_cast<int>(actions.size()) - 1; p >= 0; --p) {
    if (++actions[p] < counts[p]) return true;
    actions[p] = 0;
  }
  return false;
}

}  // namespace

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw InvalidInput("mixed strategy must have at least one action");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p)) {
      throw InvalidInput("mixed strategy has a non-finite probability");
    }
    if (p < 0.0) {
      throw InvalidInput("mixed strategy has a negative probability " +
                         std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw InvalidInput("mixed strategy probabilities sum to " +
                       std::to_string(sum) + ", not 1");
  }
}

MixedStrategy MixedStrategy::Pure(int num_actions, int action) {
  if (num_actions < 1 || action < 0 || action >= num_actions) {
    throw InvalidInput("pure strategy action " + std::to_string(action) +
                       " out of range for " + std::to_string(num_actions) +
                       " actions");
  }
  std::vector<double> probs(num_actions, 0.0);
  probs[action] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::Uniform(int num_actions) {
  if (num_actions < 1) throw InvalidInput("uniform strategy needs actions");
  return MixedStrategy(std::vector<double>(num_actions, 1.0 / num_actions));
}

bool MixedStrategy::BitwiseEquals(const MixedStrategy& other) const {
  return BitwiseEqual(probs_, other.probs_);
}

StrategyProfile StrategyProfile::With(int player,
                                      MixedStrategy strategy) const {
  std::vector<MixedStrategy> copy = strategies_;
  copy.at(player) = std::move(strategy);
  return StrategyProfile(std::move(copy));
}

bool StrategyProfile::BitwiseEquals(const StrategyProfile& other) const {
  if (strategies_.size() != other.strategies_.size()) return false;
  for (std::size_t i = 0; i < strategies_.size(); ++i) {
    if (!strategies_[i].BitwiseEquals(other.strategies_[i])) return false;
  }
  return true;
}

Game::Game(std::vector<int> action_counts,
           std::vector<std::vector<double>> payoffs, std::string name)
    : action_counts_(std::move(action_counts)),
      payoffs_(std::move(payoffs)),
      name_(std::move(name)) {
  const int n = static_cast<int>(action_counts_.size());
  if (n < 1) throw InvalidInput("game needs at least one player");
  if (n > kMaxPlayers) {
    throw InvalidInput("game has " + std::to_string(n) +
                       " players; at most " + std::to_string(kMaxPlayers) +
                       " are supported");
  }
  for (int i = 0; i < n; ++i) {
    const int count = action_counts_[i];
    if (count < 1) {
      throw InvalidInput("player " + std::to_string(i) +
                         " needs at least one action");
    }
    if (count > kMaxActions) {
      throw InvalidInput("player " + std::to_string(i) + " has " +
                         std::to_string(count) + " actions; at most " +
                         std::to_string(kMaxActions) + " are supported");
    }
  }
  strides_.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * action_counts_[i + 1];
  }
  num_profiles_ = strides_[0] * action_counts_[0];

  if (static_cast<int>(payoffs_.size()) != n) {
    throw InvalidInput("expected payoff arrays for " + std::to_string(n) +
                       " players, got " + std::to_string(payoffs_.size()));
  }
  for (int i = 0; i < n; ++i) {
    if (payoffs_[i].size() != num_profiles_) {
      throw InvalidInput("payoffs[" + std::to_string(i) + "] has length " +
                         std::to_string(payoffs_[i].size()) + ", expected " +
                         std::to_string(num_profiles_));
    }
    for (double r : payoffs_[i]) {
      if (!std::isfinite(r)) {
        throw InvalidInput("payoffs[" + std::to_string(i) +
                           "] contains a non-finite value");
      }
    }
  }
}

std::size_t Game::FlatIndex(std::span<const int> actions) const {
  if (static_cast<int>(actions.size()) != num_players()) {
    throw InvalidInput("action profile has wrong number of players");
  }
  std::size_t index = 0;
  for (int i = 0; i < num_players(); ++i) {
    if (actions[i] < 0 || actions[i] >= action_counts_[i]) {
      throw InvalidInput("action " + std::to_string(actions[i]) +
                         " out of range for player " + std::to_string(i));
    }
    index += strides_[i] * actions[i];
  }
  return index;
}

double Game::MaxAbsPayoff() const {
  double m = 0.0;
  for (const auto& table : payoffs_) {
    for (double r : table) m = std::max(m, std::abs(r));
  }
  return m;
}

double Game::PayoffSpread() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& table : payoffs_) {
    for (double r : table) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return hi - lo;
}

void Game::ValidatePlayer(int player) const {
  if (player < 0 || player >= num_players()) {
    throw InvalidInput("player index " + std::to_string(player) +
                       " out of range for " + std::to_string(num_players()) +
                       " players");
  }
}

void Game::ValidateProfile(const StrategyProfile& profile) const {
  if (profile.num_players() != num_players()) {
    throw InvalidInput("profile has " + std::to_string(profile.num_players()) +
                       " strategies for a " + std::to_string(num_players()) +
                       "-player game");
  }
  for (int i = 0; i < num_players(); ++i) {
    if (profile[i].num_actions() != action_counts_[i]) {
      throw InvalidInput("strategy of player " + std::to_string(i) + " has " +
                         std::to_string(profile[i].num_actions()) +
                         " entries, expected " +
                         std::to_string(action_counts_[i]));
    }
  }
}

bool SatisfactionReport::IsSatisfied(int player) const {
  return std::binary_search(satisfied.begin(), satisfied.end(), player);
}

double SatisfactionReport::MaxGap() const {
  double m = 0.0;
  for (double g : gaps) m = std::max(m, g);
  return m;
}

double ExpectedReward(const Game& game, const StrategyProfile& profile,
                      int player) {
  game.ValidateProfile(profile);
  game.ValidatePlayer(player);
  const auto table = game.payoffs(player);
  const int n = game.num_players();
  std::vector<int> actions(n, 0);
  double total = 0.0;
  std::size_t flat = 0;
  do {
    double weight = 1.0;
    for (int j = 0; j < n; ++j) weight *= profile[j][actions[j]];
    total += table[flat] * weight;
    ++flat;
  } while (NextProfile(actions, game.action_counts()));
  return total;
}

std::vector<double> PureActionPayoffs(const Game& game,
                                      const StrategyProfile& profile,
                                      int player) {
  game.ValidateProfile(profile);
  game.ValidatePlayer(player);
  const auto table = game.payoffs(player);
  const int n = game.num_players();
  std::vector<double> out(game.num_actions(player), 0.0);
  std::vector<int> actions(n, 0);
  std::size_t flat = 0;
  do {
    double weight = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != player) weight *= profile[j][actions[j]];
    }
    out[actions[player]] += table[flat] * weight;
    ++flat;
  } while (NextProfile(actions, game.action_counts()));
  return out;
}

double DeviationGap(const Game& game, const StrategyProfile& profile,
                    int player) {
  const std::vector<double> w = PureActionPayoffs(game, profile, player);
  const double best = *std::max_element(w.begin(), w.end());
  const MixedStrategy& x = profile[player];
  double gap = 0.0;
  for (int a = 0; a < x.num_actions(); ++a) gap += x[a] * (best - w[a]);
  return std::max(gap, 0.0);
}

double MaxDeviationGap(const Game& game, const StrategyProfile& profile) {
  double m = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    m = std::max(m, DeviationGap(game, profile, i));
  }
  return m;
}

SatisfactionReport ComputeSatisfaction(const Game& game,
                                       const StrategyProfile& profile,
                                       double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("epsilon must be a finite nonnegative number");
  }
  game.ValidateProfile(profile);
  SatisfactionReport report;
  report.epsilon = epsilon;
  report.gaps.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    report.gaps[i] = DeviationGap(game, profile, i);
    if (report.gaps[i] <= epsilon) {
      report.satisfied.push_back(i);
    } else {
      report.unsatisfied.push_back(i);
    }
  }
  return report;
}

bool IsEpsBestResponse(const Game& game, const StrategyProfile& profile,
                       int player, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("epsilon must be a finite nonnegative number");
  }
  return DeviationGap(game, profile, player) <= epsilon;
}

StrategyProfile UniformProfile(const Game& game) {
  std::vector<MixedStrategy> s;
  s.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    s.push_back(MixedStrategy::Uniform(game.num_actions(i)));
  }
  return StrategyProfile(std::move(s));
}

StrategyProfile PureProfile(const Game& game, std::span<const int> actions) {
  if (static_cast<int>(actions.size()) != game.num_players()) {
    throw InvalidInput("pure profile needs one action per player");
  }
  std::vector<MixedStrategy> s;
  s.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    s.push_back(MixedStrategy::Pure(game.num_actions(i), actions[i]));
  }
  return StrategyProfile(std::move(s));
}

}  // namespace satpath
