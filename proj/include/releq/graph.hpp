#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "releq/model.hpp"

namespace releq {

// -------------------------------------------------------------- state graphs

struct StateGraph {
  // succ[s] = distinct successor ids, sorted by state name rank.
  std::vector<std::vector<int>> succ;
  static StateGraph of(const Game& g);
  bool has_edge(int s, int t) const;
};

// Strongly connected components of the subgraph induced by `allowed`,
// restricted to states reachable from source (source must be in allowed;
// otherwise the result is empty). Returned as state masks in completion order
// (every edge leaving a component points to an earlier entry).
std::vector<std::uint64_t> tarjan_sccs(const StateGraph& gr, int source,
                                       std::uint64_t allowed);
std::vector<std::uint64_t> tarjan_sccs(const Game& g, int source);

// True iff the induced subgraph on `mask` contains a cycle through every
// state, i.e. it is strongly connected and has at least one edge.
bool induced_strongly_connected(const StateGraph& gr, std::uint64_t mask);

// ------------------------------------------------------------ lasso searches

struct SearchBounds {
  std::size_t stem;
  std::size_t cycle;
};

// stem = cycle = |St|^2.
SearchBounds default_bounds(const Game& g);

// Position admissibility for lasso searches. B is the loser-touch bookkeeping
// mask used by the occurrence payoff classes (always 0 for the others):
// reach: 0 on every admissible play; safe: losers whose unsafe set the play has
// touched so far.
struct LassoFilter {
  virtual ~LassoFilter() = default;
  // May the play sit at s with bookkeeping B?
  virtual bool state_ok(int, std::uint32_t) const { return true; }
  // May the play move s -> t while at bookkeeping B (B includes s's touches)?
  virtual bool edge_ok(int, std::uint32_t, int) const { return true; }
};

struct SearchStats {
  std::uint64_t nodes = 0;    // class-graph nodes expanded
  std::uint64_t subsets = 0;  // candidate cycle sets examined (exact engine)
};

// Decides whether some play from `source` has payoff exactly `profile`, every
// position admitted by `filter`, and a (stem, cycle) representation with
// |stem| <= b.stem and |cycle| <= b.cycle. Requires a uniform objective class.
// Returns a canonical witness. Raises Budget when the class graphs or subset
// enumeration exceed internal caps (exact engine: > 12 states).
std::optional<Lasso> find_profile_lasso(const Game& g, int source,
                                        std::uint32_t profile,
                                        const SearchBounds& b,
                                        const LassoFilter* filter,
                                        SearchStats* stats);

// All payoffs of plays from source with a representation within the bounds,
// ascending as bitmasks. Uniform objective class required; guarded like
// find_profile_lasso (and by agent count for the occurrence classes).
std::vector<std::uint32_t> achievable_profiles(const Game& g, int source,
                                               const SearchBounds& b,
                                               SearchStats* stats = nullptr);

// Maximal elements under componentwise dominance, ascending as bitmasks.
std::vector<std::uint32_t> pareto_front(const std::vector<std::uint32_t>& profiles);

// Streams the canonical forms of all plays from source having a representation
// within the bounds, deduplicated, in (stem, cycle) pair-lexicographic order.
// Intended for small bounds; raises Budget past internal caps.
void enumerate_lassos(const Game& g, int source, const SearchBounds& b,
                      const std::function<void(const Lasso&)>& f);

}  // namespace releq
