#ifndef SATPATH_GAME_H_
#define SATPATH_GAME_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace satpath {

// Enumeration over the full action-profile space is exponential in the
// number of players, so games are capped at desk scale.
inline constexpr int kMaxPlayers = 6;
inline constexpr int kMaxActions = 6;

// Default tolerance under which a deviation gap counts as best responding.
inline constexpr double kDefaultSatisfactionTolerance = 1e-9;

// Probabilities of a mixed strategy must sum to one within this tolerance.
inline constexpr double kSimplexTolerance = 1e-12;

// A point of the probability simplex over one player's actions.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  // Throws InvalidInput unless every entry is finite and nonnegative and the
  // entries sum to one within kSimplexTolerance.
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Pure(int num_actions, int action);
  static MixedStrategy Uniform(int num_actions);

  int num_actions() const { return static_cast<int>(probs_.size()); }
  double operator[](int action) const { return probs_[action]; }
  std::span<const double> probs() const { return probs_; }

  // Compares the stored bit patterns, so 0.0 and -0.0 differ.
  bool BitwiseEquals(const MixedStrategy& other) const;

  // Value equality on the stored doubles.
  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

// One mixed strategy per player.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<MixedStrategy> strategies)
      : strategies_(std::move(strategies)) {}

  int num_players() const { return static_cast<int>(strategies_.size()); }
  const MixedStrategy& operator[](int player) const {
    return strategies_[player];
  }
  const std::vector<MixedStrategy>& strategies() const { return strategies_; }

  // Returns a copy with `player`'s strategy replaced.
  StrategyProfile With(int player, MixedStrategy strategy) const;

  bool BitwiseEquals(const StrategyProfile& other) const;
  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;

 private:
  std::vector<MixedStrategy> strategies_;
};

// A finite n-player normal-form game. Payoffs for each player are stored as a
// flat array over action profiles in row-major order with the last player's
// action varying fastest.
class Game {
 public:
  Game() = default;
  Game(std::vector<int> action_counts,
       std::vector<std::vector<double>> payoffs, std::string name = "");

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  int num_actions(int player) const { return action_counts_[player]; }
  const std::vector<int>& action_counts() const { return action_counts_; }
  std::size_t num_profiles() const { return num_profiles_; }
  const std::string& name() const { return name_; }

  std::span<const double> payoffs(int player) const {
    return payoffs_[player];
  }
  const std::vector<std::vector<double>>& all_payoffs() const {
    return payoffs_;
  }
  double payoff(int player, std::span<const int> actions) const {
    return payoffs_[player][FlatIndex(actions)];
  }

  std::size_t FlatIndex(std::span<const int> actions) const;
  // Stride of `player`'s action in the flat layout.
  std::size_t stride(int player) const { return strides_[player]; }

  // Largest |r^i(a)| over all players and profiles.
  double MaxAbsPayoff() const;
  // max r - min r over all players and profiles.
  double PayoffSpread() const;

  // Throws InvalidInput if the profile does not match this game's shape.
  void ValidateProfile(const StrategyProfile& profile) const;
  void ValidatePlayer(int player) const;

  friend bool operator==(const Game& a, const Game& b) {
    return a.action_counts_ == b.action_counts_ && a.payoffs_ == b.payoffs_ &&
           a.name_ == b.name_;
  }

 private:
  std::vector<int> action_counts_;
  std::vector<std::vector<double>> payoffs_;
  std::vector<std::size_t> strides_;
  std::size_t num_profiles_ = 0;
  std::string name_;
};

// Per-player deviation gaps and the induced satisfied/unsatisfied partition.
struct SatisfactionReport {
  std::vector<double> gaps;
  std::vector<int> satisfied;    // ascending player indices
  std::vector<int> unsatisfied;  // ascending player indices
  double epsilon = kDefaultSatisfactionTolerance;

  bool IsSatisfied(int player) const;
  bool AllSatisfied() const { return unsatisfied.empty(); }
  double MaxGap() const;
};

// R^i(x) = sum_a r^i(a) prod_j x^j(a^j), by exact enumeration.
double ExpectedReward(const Game& game, const StrategyProfile& profile,
                      int player);

// Entry a is R^i(delta_a, x^{-i}).
std::vector<double> PureActionPayoffs(const Game& game,
                                      const StrategyProfile& profile,
                                      int player);

// F^i(x) = max_a R^i(delta_a, x^{-i}) - R^i(x). Evaluated as
// sum_a x^i(a) (max_w - w(a)) so the result is nonnegative term by term and
// exactly zero when x^i is supported on the argmax.
double DeviationGap(const Game& game, const StrategyProfile& profile,
                    int player);

double MaxDeviationGap(const Game& game, const StrategyProfile& profile);

SatisfactionReport ComputeSatisfaction(
    const Game& game, const StrategyProfile& profile,
    double epsilon = kDefaultSatisfactionTolerance);

bool IsEpsBestResponse(const Game& game, const StrategyProfile& profile,
                       int player, double epsilon);

// Uniform strategy for every player.
StrategyProfile UniformProfile(const Game& game);
// Pure profile from one action index per player.
StrategyProfile PureProfile(const Game& game, std::span<const int> actions);

}  // namespace satpath

#endif  // SATPATH_GAME_H_
