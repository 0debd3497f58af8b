#pragma once

#include <optional>
#include <string>
#include <vector>

#include "releq/model.hpp"

namespace releq {

struct ValidationResult {
  std::optional<Game> game;  // set iff violations empty
  std::vector<std::string> violations;
};

// Parses and validates a game description. Malformed JSON raises a Parse
// error; rule violations are collected (game left empty).
ValidationResult validate_game_json(const std::string& text);

// validate_game_json that raises Validation listing the violations.
Game parse_game(const std::string& text);
Game parse_game_file(const std::string& path);

// Canonical serialization; parse_game(game_to_json(g)) reproduces g.
std::string game_to_json(const Game& g);

}  // namespace releq
