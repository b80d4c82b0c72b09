#ifndef SATPATH_GAME_IO_H_
#define SATPATH_GAME_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "satpath/game.h"

namespace satpath {

// Game documents are JSON objects:
//
//   {
//     "name": "matching_pennies",          (optional)
//     "players": 2,
//     "actions": [2, 2],
//     "payoffs": [[1, -1, -1, 1], [-1, 1, 1, -1]]
//   }
//
// payoffs[i] lists player i's reward for every action profile in row-major
// order with the last player's action varying fastest. Numbers are written
// with 17 significant digits so a save/load round trip is bit-exact.

// Throws ParseError naming the offending key ("players", "actions[1]",
// "payoffs[0]", ...).
Game GameFromJson(const std::string& text);
std::string GameToJson(const Game& game);

// Throws IoError if the file cannot be read or written.
Game LoadGame(const std::string& path);
void SaveGame(const Game& game, const std::string& path);

// Payoffs i.i.d. uniform on [-1, 1], deterministic per seed.
Game GenerateRandomGame(int num_players, const std::vector<int>& action_counts,
                        std::uint64_t seed);

// printf("%.17g"); the shortest format guaranteed to round-trip a double.
std::string FormatDouble(double value);

}  // namespace satpath

#endif  // SATPATH_GAME_IO_H_
