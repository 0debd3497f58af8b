#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace releq {

// ---------------------------------------------------------------- error model

enum class ErrorKind { Parse, Validation, Budget, Usage, Internal };

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

// -------------------------------------------------------------------- limits

inline constexpr int kMaxStates = 60;             // state sets fit in uint64_t
inline constexpr int kMaxAgents = 30;             // winner profiles fit in uint32_t
inline constexpr std::size_t kMaxMoveEntries = 1'000'000;  // total transition rows

// ---------------------------------------------------------------- objectives

enum class ObjectiveKind { Reach, Safe, Buchi, CoBuchi, Parity, Muller };

const char* objective_kind_name(ObjectiveKind k);

struct Objective {
  ObjectiveKind kind = ObjectiveKind::Reach;
  // Reach(target)/Safe(unsafe)/Buchi(accept)/CoBuchi(reject): state-id bitmask.
  std::uint64_t set = 0;
  // Parity: priority per state id (even = good when minimal on the cycle).
  std::vector<int> priority;
  // Muller: colour id per state id, the declared colour names, and the accepting
  // family as bitmasks over colour ids.
  std::vector<int> colour;
  std::vector<std::string> colour_names;
  std::vector<std::uint64_t> family;
};

// --------------------------------------------------------------------- games

struct Game {
  std::vector<std::string> states;  // id = index; identity order = input order
  int n_agents = 0;
  std::vector<std::string> actions;  // global action names, input order
  // avail[s][i] = action ids available to agent i at s, sorted by action name.
  std::vector<std::vector<std::vector<int>>> avail;
  // tr[s][rank] = target state id. rank = odometer over avail[s], agent 0
  // outermost (most significant).
  std::vector<std::vector<int>> tr;
  std::vector<Objective> objectives;  // one per agent
  std::optional<int> initial;

  // Derived on construction:
  std::vector<int> state_rank;  // state_rank[s] = position of s in name-lex order
  bool turn_based = false;
  std::vector<int> owner;  // unique agent with >1 action at s, else -1

  int state_count() const { return static_cast<int>(states.size()); }
  std::size_t move_count(int s) const { return tr[s].size(); }
  int state_id(const std::string& name) const;  // -1 if unknown

  std::vector<int> decode_move(int s, std::size_t rank) const;
  std::size_t encode_move(int s, const std::vector<int>& action_ids) const;

  // Recomputes state_rank / turn_based / owner. Called after construction.
  void finalize_derived();
};

// Single objective kind shared by all agents, if any.
std::optional<ObjectiveKind> uniform_class(const Game& g);
// Raises Validation if objectives mix payoff classes.
ObjectiveKind require_uniform_class(const Game& g);

// ------------------------------------------------------------------- payoffs

struct WinnerProfile {
  std::uint32_t bits = 0;  // bit i set = agent with index i wins
  int n = 0;

  int social_welfare() const { return std::popcount(bits); }
  bool wins(int agent) const { return (bits >> agent) & 1u; }
  // Agent index 0 is the leftmost character.
  std::string to_string() const;
  // Raises Usage on non-binary characters; n fixed by the string length.
  static WinnerProfile from_string(const std::string& s);

  friend bool operator==(const WinnerProfile&, const WinnerProfile&) = default;
};

// True iff a >= b componentwise.
inline bool profile_geq(std::uint32_t a, std::uint32_t b) { return (b & ~a) == 0; }

// True iff the play whose occurring / infinitely-occurring state sets are
// occ / inf satisfies o. Requires inf nonempty and inf subset of occ.
bool eval_objective(const Objective& o, std::uint64_t occ, std::uint64_t inf);

// -------------------------------------------------------------------- lassos

struct Lasso {
  std::vector<int> stem;   // state ids, possibly empty
  std::vector<int> cycle;  // state ids, nonempty

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

std::uint64_t states_mask(const std::vector<int>& seq);

// True iff consecutive states (stem, stem->cycle, cycle wrap) are all joined by
// some legal move, and the lasso starts at `source`.
bool lasso_is_play(const Game& g, const Lasso& l, int source);

// Payoff of stem . cycle^omega: occ = stem+cycle states, inf = cycle states.
WinnerProfile payoff_of_lasso(const Game& g, const Lasso& l);

// Canonical representation of the same infinite play: primitive period, cycle
// rotated so the period reads lexicographically least by state names, stem the
// unique shortest prefix consistent with that rotation. Two lassos denote the
// same play iff their canonical forms are equal.
Lasso canonical_lasso(const Game& g, Lasso l);

// (stem, cycle) pair-lexicographic order; elements compared by state name.
bool lasso_less(const Game& g, const Lasso& a, const Lasso& b);

}  // namespace releq
