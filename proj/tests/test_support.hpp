#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "releq/game_json.hpp"
#include "releq/model.hpp"

namespace tsup {

// Deterministic RNG for reproducible suites.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform in [0, n).
  int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }
  bool coin() { return (eng_() & 1u) != 0; }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// One state of a turn-based game under construction: the owning agent picks the
// successor; every other agent has the single action ".".
struct TbState {
  std::string name;
  int owner;                         // 1-based agent index
  std::vector<std::string> targets;  // successor state names, owner's choices
};

// Builds the JSON for a turn-based game; objectives_json is the serialized
// objectives array and initial the starting state name.
std::string turn_based_json(const std::vector<TbState>& states, int n_agents,
                            const std::string& objectives_json,
                            const std::string& initial);

releq::Game turn_based_game(const std::vector<TbState>& states, int n_agents,
                            const std::string& objectives_json,
                            const std::string& initial);

// Uniform random game: full transition table, random availability (1..max_act
// actions per agent per state), one objective of the given kind per agent,
// initial state s0. Kinds are drawn per the `kind` argument for all agents.
releq::Game random_game(Rng& rng, int n_states, int n_agents, int max_act,
                        releq::ObjectiveKind kind);

// Lasso from state names.
releq::Lasso lasso_of(const releq::Game& g, const std::vector<std::string>& stem,
                      const std::vector<std::string>& cycle);

}  // namespace tsup
