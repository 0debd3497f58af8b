#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "releq/model.hpp"
#include "releq/suspect.hpp"

namespace releq {

// ------------------------------------------------ two-player graph primitives

// Explicit game graph: eve picks the successor at eve-owned vertices, the
// opponent elsewhere. Every vertex must have at least one successor.
struct TwoPlayerGraph {
  std::vector<std::vector<int>> succ;
  std::vector<char> eve_owned;

  int size() const { return static_cast<int>(succ.size()); }
};

// Vertices from which the chosen player can force a visit to a target vertex
// (target vertices included).
std::vector<char> attractor(const TwoPlayerGraph& g, const std::vector<char>& target,
                            bool for_eve);

// Vertices from which the chosen player can force visiting target vertices
// infinitely often.
std::vector<char> buchi_win(const TwoPlayerGraph& g, const std::vector<char>& target,
                            bool for_eve);

// Vertices from which eve can force the maximum priority occurring infinitely
// often to be even.
std::vector<char> parity_win_max(const TwoPlayerGraph& g, const std::vector<int>& priority);

// Vertices from which eve can force the set of colours occurring infinitely
// often to be accepted. At most 16 distinct colours (ids 0..15).
std::vector<char> muller_win(const TwoPlayerGraph& g, const std::vector<int>& colour,
                             const std::function<bool(std::uint32_t)>& eve_accepts);

// --------------------------------------------------------- loser bookkeeping

// Progress bits for the two payoff classes whose satisfaction is decided by
// which state sets a play has touched so far. Each loser with a nonempty
// objective set gets one bit; touch[s] holds the bits of losers whose set
// contains s. Other payoff classes carry no progress bits.
struct BTracking {
  int b = 0;
  std::vector<int> bitpos;           // agent -> bit index, -1 when untracked
  std::vector<std::uint32_t> touch;  // state -> tracked-loser bits touched at s

  std::uint32_t expand(std::uint32_t compact) const {
    std::uint32_t agents = 0;
    for (std::size_t i = 0; i < bitpos.size(); ++i)
      if (bitpos[i] >= 0 && ((compact >> bitpos[i]) & 1u)) agents |= 1u << i;
    return agents;
  }
  std::uint32_t compact(std::uint32_t agents) const {
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < bitpos.size(); ++i)
      if (bitpos[i] >= 0 && ((agents >> i) & 1u)) c |= 1u << bitpos[i];
    return c;
  }
};

BTracking make_b_tracking(const Game& g, std::uint32_t losers);

// Whether a play is acceptable for the protagonist defending the payoff whose
// loser set is `losers`: no agent in `accountable & losers` may satisfy its
// objective. `touched` is the agent set whose objective set the play has
// touched (touch-decided classes); `inf_states` the states the play visits
// forever (limit-decided classes).
bool eve_good(const Game& g, std::uint32_t losers, std::uint32_t accountable,
              std::uint32_t touched, std::uint64_t inf_states);

// --------------------------------------------------------------- region table

// Winner of every arena vertex, per progress-bit value, for a fixed loser set.
struct WinningRegion {
  std::uint32_t losers = 0;
  BTracking bt;
  std::vector<char> eve_win;   // [(eve_id << bt.b) | progress]
  std::vector<char> adam_win;  // [(adam_id << bt.b) | progress]

  bool eve(int eve_id, std::uint32_t progress) const {
    return eve_win[(static_cast<std::size_t>(eve_id) << bt.b) | progress] != 0;
  }
  bool adam(int adam_id, std::uint32_t progress) const {
    return adam_win[(static_cast<std::size_t>(adam_id) << bt.b) | progress] != 0;
  }
};

enum class Backend { Fixpoint, Lar };

// Direct fixpoint solver on the deviation arena.
WinningRegion fixpoint_region(const Game& g, const SuspectArena& a, std::uint32_t losers);

// Independent solver: turns the arena into a parity game over
// latest-appearance records of the reachable states and solves that instead.
// Refuses when the estimated record space exceeds `budget` vertices.
WinningRegion lar_oracle_solve(const Game& g, const SuspectArena& a, std::uint32_t losers,
                               std::uint64_t budget);

WinningRegion solve_eve_region(const Game& g, const SuspectArena& a, std::uint32_t losers,
                               Backend backend, std::uint64_t oracle_budget);

}  // namespace releq
