#include "satpath/game_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "satpath/errors.h"
#include "satpath/random.h"

namespace satpath {

using nlohmann::json;

std::string FormatDouble(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Game GameFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");

  if (!doc.contains("players")) throw ParseError("players", "missing");
  const json& players = doc["players"];
  if (!players.is_number_integer()) {
    throw ParseError("players", "expected an integer");
  }
  const long long n = players.get<long long>();
  if (n < 1) throw ParseError("players", "must be at least 1");
  if (n > kMaxPlayers) {
    throw ParseError("players",
                     "at most " + std::to_string(kMaxPlayers) + " supported");
  }

  if (!doc.contains("actions")) throw ParseError("actions", "missing");
  const json& actions = doc["actions"];
  if (!actions.is_array() || static_cast<long long>(actions.size()) != n) {
    throw ParseError("actions",
                     "expected an array of " + std::to_string(n) + " integers");
  }
  std::vector<int> counts;
  std::size_t profiles = 1;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const std::string key = "actions[" + std::to_string(i) + "]";
    if (!actions[i].is_number_integer()) {
      throw ParseError(key, "expected an integer");
    }
    const long long m = actions[i].get<long long>();
    if (m < 1 || m > kMaxActions) {
      throw ParseError(key, "must lie in [1, " + std::to_string(kMaxActions) +
                                "]");
    }
    counts.push_back(static_cast<int>(m));
    profiles *= static_cast<std::size_t>(m);
  }

  if (!doc.contains("payoffs")) throw ParseError("payoffs", "missing");
  const json& payoffs = doc["payoffs"];
  if (!payoffs.is_array() || static_cast<long long>(payoffs.size()) != n) {
    throw ParseError("payoffs",
                     "expected an array of " + std::to_string(n) + " arrays");
  }
  std::vector<std::vector<double>> tables;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    const std::string key = "payoffs[" + std::to_string(i) + "]";
    const json& row = payoffs[i];
    if (!row.is_array() || row.size() != profiles) {
      throw ParseError(key, "expected an array of " + std::to_string(profiles) +
                                " numbers");
    }
    std::vector<double> table;
    table.reserve(profiles);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number()) {
        throw ParseError(key + "[" + std::to_string(k) + "]",
                         "expected a number");
      }
      const double v = row[k].get<double>();
      if (!std::isfinite(v)) {
        throw ParseError(key + "[" + std::to_string(k) + "]",
                         "payoff must be finite");
      }
      table.push_back(v);
    }
    tables.push_back(std::move(table));
  }

  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  try {
    return Game(std::move(counts), std::move(tables), std::move(name));
  } catch (const InvalidInput& e) {
    throw ParseError("document", e.what());
  }
}

std::string GameToJson(const Game& game) {
  std::ostringstream out;
  out << "{\n";
  if (!game.name().empty()) {
    out << "  \"name\": " << json(game.name()).dump() << ",\n";
  }
  out << "  \"players\": " << game.num_players() << ",\n";
  out << "  \"actions\": [";
  for (int i = 0; i < game.num_players(); ++i) {
    out << (i ? ", " : "") << game.num_actions(i);
  }
  out << "],\n  \"payoffs\": [\n";
  for (int i = 0; i < game.num_players(); ++i) {
    out << "    [";
    const auto table = game.payoffs(i);
    for (std::size_t k = 0; k < table.size(); ++k) {
      out << (k ? ", " : "") << FormatDouble(table[k]);
    }
    out << "]" << (i + 1 < game.num_players() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

Game LoadGame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open game file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read game file '" + path + "'");
  return GameFromJson(buffer.str());
}

void SaveGame(const Game& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << GameToJson(game);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

Game GenerateRandomGame(int num_players, const std::vector<int>& action_counts,
                        std::uint64_t seed) {
  if (num_players < 1 || num_players > kMaxPlayers) {
    throw InvalidInput("number of players must lie in [1, " +
                       std::to_string(kMaxPlayers) + "]");
  }
  if (static_cast<int>(action_counts.size()) != num_players) {
    throw InvalidInput("need one action count per player");
  }
  std::size_t profiles = 1;
  for (int m : action_counts) {
    if (m < 1 || m > kMaxActions) {
      throw InvalidInput("action counts must lie in [1, " +
                         std::to_string(kMaxActions) + "]");
    }
    profiles *= static_cast<std::size_t>(m);
  }
  Rng rng(seed);
  std::vector<std::vector<double>> payoffs(num_players,
                                           std::vector<double>(profiles));
  for (auto& table : payoffs) {
    for (double& r : table) r = UniformReal(rng, -1.0, 1.0);
  }
  return Game(action_counts, std::move(payoffs),
              "random_" + std::to_string(seed));
}

}  // namespace satpath
