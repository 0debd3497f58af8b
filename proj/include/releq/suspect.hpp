#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "releq/model.hpp"

namespace releq {

// Agents that could have produced the transition s -> target by changing only
// their own action in `move` (a vector of action ids, one per agent). Agents
// whose prescribed action already reaches `target` count.
std::uint32_t deviators_to(const Game& g, int s, const std::vector<int>& move, int target);

// Two-player deviation-tracking arena built from a game. One side ("eve")
// stands at a game state with a set of agents still accountable for the play
// so far; it proposes a full move. The other side ("adam") answers with any
// state reachable from that move by at most one unilateral deviation; the
// accountable set shrinks to the agents consistent with the answer. Answering
// with the prescribed move's target keeps the set unchanged.
struct SuspectArena {
  struct EveVertex {
    int state = 0;
    std::uint32_t accountable = 0;
  };
  struct AdamVertex {
    int eve = 0;          // proposing eve vertex
    std::size_t move = 0; // move rank at that vertex's state
  };
  struct AdamEdge {
    int target = 0;   // answered game state
    int eve = 0;      // successor eve vertex id
    bool obey = false; // true on the prescribed-move edge
  };

  std::vector<EveVertex> eve;
  std::vector<AdamVertex> adam;
  std::vector<std::vector<int>> eve_succ;       // eve id -> adam ids, move-rank order
  std::vector<std::vector<AdamEdge>> adam_succ; // adam id -> edges, target name order
  int source = -1;                              // eve id of the entry vertex

  int eve_count() const { return static_cast<int>(eve.size()); }
  int adam_count() const { return static_cast<int>(adam.size()); }
  // Id of the (state, accountable) vertex, or -1 if not materialized.
  int find_eve(int state, std::uint32_t accountable) const;
};

// Explores every vertex reachable from (source, all agents). Answers are
// grouped per distinct target state, so each proposed move yields one edge per
// reachable successor state, including answers that clear the accountable set.
SuspectArena build_suspect_arena(const Game& g, int source);

// Distinct accountable sets present in the arena, ordered so that every set
// appears after all of its proper subsets.
std::vector<std::uint32_t> accountable_layers(const SuspectArena& a);

// Stabilized accountable set of an arena lasso, given the eve vertices of its
// cycle. Along any walk the set only shrinks, so on a cycle every vertex
// carries the same set; vertices that disagree raise an Internal error.
std::uint32_t lambda_limit(const SuspectArena& a, const std::vector<int>& cycle_eves);

// The arena walk obtained when every agent follows the lasso and adam always
// answers with the prescribed target: one (eve, adam) pair per play step of
// stem . cycle, using the name-least move realizing each step. Returns nothing
// if the lasso is not a play from the arena's source state.
std::optional<std::vector<std::pair<int, int>>> embed_obedient(const Game& g,
                                                               const SuspectArena& a,
                                                               const Lasso& l);

// Human-readable JSON dump of the arena (vertices, proposals, answers, census).
std::string arena_to_json(const Game& g, const SuspectArena& a);

}  // namespace releq
