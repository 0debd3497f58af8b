#pragma once

#include <string>
#include <vector>

#include "releq/model.hpp"

namespace releq {

// Propositional formula in conjunctive normal form. Variables are numbered
// 1..n; a literal is a nonzero integer whose sign gives the polarity. Clauses
// are nonempty and stored sorted with duplicates removed.
struct CnfFormula {
  int n = 0;
  std::vector<std::vector<int>> clauses;
};

// Standard DIMACS CNF reader. Lines starting with 'c' are comments; the first
// other line must be the "p cnf <vars> <clauses>" header, which is checked
// against the body. Raises Parse on a malformed header, a literal outside
// [1,n], a clause left open at end of input, an empty clause, or a clause
// count that contradicts the header.
CnfFormula parse_dimacs(const std::string& text);

// A game produced from a formula, together with the welfare threshold that
// makes swdp on it equivalent to satisfiability.
struct GeneratedGame {
  Game game;
  int threshold = 0;
};

// All three generators build the same turn-based skeleton, owned entirely by
// agent 0: a spine v0..v{n+m} where column k <= n branches through one of the
// literal states xk / nxk (agent 0 picks the value of variable k) and column
// n+j passes through one occurrence state c{j}_<lit> per literal of clause j
// (agent 0 points at a literal it claims satisfies the clause).

// Agents: 0 plus one per clause; m+1 in total. The spine ends in an absorbing
// state. Agent 0's target is every state; clause agent j's target is the
// literal states of clause j. All agents win together on exactly the branch
// choices that encode a satisfying assignment, so swdp at threshold m+1
// answers satisfiability.
GeneratedGame sat_to_reach_game(const CnfFormula& f);

// Agents: 0 plus two per variable; 2n+1 in total. The spine loops back to v0.
// Agent 0 never loses (empty unsafe set); agent 2k-1 must avoid xk and every
// occurrence of the literal xk, agent 2k likewise for nxk. Each round spoils
// at least one agent per variable, and one exactly when the round encodes a
// satisfying assignment consistently, so swdp at threshold n+1 answers
// satisfiability.
GeneratedGame sat_to_safety_game(const CnfFormula& f);

// Same shape and state sets as sat_to_safety_game, but an agent loses only if
// its bad states recur forever, so only the long-run behaviour counts.
GeneratedGame sat_to_cobuchi_game(const CnfFormula& f);

// Exhaustive truth-table satisfiability check. Raises Usage when the formula
// has more than max_vars variables.
bool brute_force_sat(const CnfFormula& f, int max_vars = 20);

}  // namespace releq
