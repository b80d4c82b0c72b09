#ifndef SATPATH_FIXTURES_H_
#define SATPATH_FIXTURES_H_

#include "satpath/game.h"

namespace satpath {

// Actions: 0 = heads, 1 = tails. Player 0 wins +1 on a match, player 1 wins
// on a mismatch.
Game MatchingPennies();

// Actions: 0 = rock, 1 = paper, 2 = scissors. Win +1, loss -1, tie 0.
Game RockPaperScissors();

// Actions: 0 = cooperate, 1 = defect. T = 5, R = 3, P = 1, S = 0.
Game PrisonersDilemma();

}  // namespace satpath

#endif  // SATPATH_FIXTURES_H_
