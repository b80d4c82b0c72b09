#include "satpath/fixtures.h"

namespace satpath {

Game MatchingPennies() {
  // Profiles in order (H,H), (H,T), (T,H), (T,T).
  return Game({2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}}, "matching_pennies");
}

Game RockPaperScissors() {
  // Row player's payoff; the column player gets the negation.
  std::vector<double> row = {0, -1, 1,   //
                             1, 0, -1,   //
                             -1, 1, 0};
  std::vector<double> col(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) col[k] = -row[k];
  return Game({3, 3}, {row, col}, "rock_paper_scissors");
}

Game PrisonersDilemma() {
  // Profiles in order (C,C), (C,D), (D,C), (D,D).
  return Game({2, 2}, {{3, 0, 5, 1}, {3, 5, 0, 1}}, "prisoners_dilemma");
}

}  // namespace satpath
