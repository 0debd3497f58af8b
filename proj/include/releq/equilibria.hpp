#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "releq/graph.hpp"
#include "releq/model.hpp"
#include "releq/suspect.hpp"
#include "releq/zerosum.hpp"

namespace releq {

// Tuning knobs shared by the decision procedures.
struct DecisionOptions {
  Backend backend = Backend::Fixpoint;
  std::optional<SearchBounds> bounds;        // default: stem = cycle = |St|^2
  std::uint64_t oracle_budget = 1'000'000;   // LAR backend vertex budget
  int workers = 0;                           // 0 = $RELEQ_WORKERS, else 1
};

// Answer to one decision problem. When the answer is yes, `witness` is the
// selected stable lasso and `profile` its payoff. Stats are (name, value)
// pairs in a fixed, scheduling-independent order.
struct Decision {
  bool yes = false;
  std::optional<Lasso> witness;
  std::optional<WinnerProfile> profile;
  std::string method;
  std::vector<std::pair<std::string, std::uint64_t>> stats;
};

// Shared solving state for one (game, source): the deviation arena plus caches
// for winning regions (per loser set) and for the achievable payoff set.
// Region and payoff caches are thread-safe; everything else is immutable after
// construction.
class DecisionContext {
 public:
  DecisionContext(Game game, int source, DecisionOptions opts = {});

  const Game& game() const { return g_; }
  int source() const { return source_; }
  const SuspectArena& arena() const { return arena_; }
  const DecisionOptions& options() const { return opts_; }
  SearchBounds bounds() const { return bounds_; }
  std::uint32_t full_mask() const { return full_; }
  int workers() const { return workers_; }

  // Eve vertex holding this state with every agent accountable, -1 if the
  // state is not reachable from the source.
  int eve_at(int state) const { return eve_at_[static_cast<std::size_t>(state)]; }
  // Proposal vertices at eve_id whose prescribed move leads to `target`.
  const std::vector<int>& proposals_to(int eve_id, int target) const;

  // Winning-region table for one loser set, solved on first use and cached.
  const WinningRegion& region(std::uint32_t losers);
  // Payoffs of all plays from the source within the bounds, ascending.
  const std::vector<std::uint32_t>& achievable();

  // Cache of per-payoff stability searches. Entries are immutable once stored.
  const std::optional<Lasso>* stable_find(std::uint32_t profile);
  void stable_put(std::uint32_t profile, const std::optional<Lasso>& result);

  std::uint64_t regions_solved() const { return regions_solved_.load(); }

 private:
  struct RegionEntry {
    std::mutex m;
    std::condition_variable cv;
    bool ready = false;
    std::exception_ptr error;
    WinningRegion region;
  };

  Game g_;
  int source_ = 0;
  DecisionOptions opts_;
  SearchBounds bounds_{0, 0};
  std::uint32_t full_ = 0;
  int workers_ = 1;
  SuspectArena arena_;
  std::vector<int> eve_at_;
  // Per eve vertex: (prescribed target, proposal ids), sorted by target.
  std::vector<std::vector<std::pair<int, std::vector<int>>>> props_;
  std::vector<int> no_props_;

  std::mutex cache_mu_;
  std::map<std::uint32_t, std::unique_ptr<RegionEntry>> regions_;
  std::atomic<std::uint64_t> regions_solved_{0};

  std::mutex ach_mu_;
  std::optional<std::vector<std::uint32_t>> ach_;

  std::mutex stable_mu_;
  std::map<std::uint32_t, std::optional<Lasso>> stable_;
};

// True iff the lasso is a play from the context's source whose payoff no
// losing agent can improve by a unilateral deviation: every step of the play's
// deviation-arena walk can be taken through a proposal that stays inside the
// protagonist's winning region for the payoff's loser set.
bool verify_ne_lasso(DecisionContext& ctx, const Lasso& lasso);

// Is there a stable lasso with lower <= payoff <= upper (componentwise)?
// Candidate payoffs are tried in ascending bitmask order (agent 0 = bit 0);
// the witness is the search engine's canonical lasso for the first hit.
Decision constrained_ne_exists(DecisionContext& ctx, const WinnerProfile& lower,
                               const WinnerProfile& upper);

// Is there a stable lasso with at least `threshold` winning agents?
// Candidates are tried by descending welfare, then ascending bitmask.
Decision swdp(DecisionContext& ctx, int threshold);

// swdp for games whose objectives are all Büchi: rank the reachable SCCs by
// how many accepting sets they meet and test the ranked SCC profiles first;
// falls back to the generic sweep when no ranked profile verifies, so the
// answer always matches swdp.
Decision swdp_buchi(DecisionContext& ctx, int threshold);

// Is some stable payoff maximal (componentwise) among all play payoffs?
Decision podp(DecisionContext& ctx);

// Count-based variant: binary-search the best stable welfare, then answer yes
// unless some play exceeds that welfare count. Sound but may answer no where
// podp answers yes (a larger count need not dominate componentwise).
Decision podp_count_variant(DecisionContext& ctx);

// One-shot conveniences building a fresh context per call.
bool verify_ne_lasso(const Game& g, int source, const Lasso& lasso,
                     const DecisionOptions& opts = {});
Decision constrained_ne_exists(const Game& g, int source, const WinnerProfile& lower,
                               const WinnerProfile& upper,
                               const DecisionOptions& opts = {});
Decision swdp(const Game& g, int source, int threshold,
              const DecisionOptions& opts = {});
Decision swdp_buchi(const Game& g, int source, int threshold,
                    const DecisionOptions& opts = {});
Decision podp(const Game& g, int source, const DecisionOptions& opts = {});
Decision podp_count_variant(const Game& g, int source,
                            const DecisionOptions& opts = {});

}  // namespace releq
