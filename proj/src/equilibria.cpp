#include "releq/equilibria.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <set>
#include <thread>

namespace releq {
namespace {

int resolve_workers(int requested) {
  int w = requested;
  if (w <= 0) {
    if (const char* env = std::getenv("RELEQ_WORKERS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != nullptr && *end == '\0' && v > 0) w = static_cast<int>(std::min(v, 64L));
    }
  }
  return w <= 0 ? 1 : w;
}

// ------------------------------------------------------ candidate-sweep plumbing

struct ProbeStats {
  std::uint64_t nodes = 0;
  std::uint64_t subsets = 0;
};

struct HitResult {
  std::optional<std::size_t> index;  // least candidate index that verified
  std::optional<Lasso> witness;
  std::uint64_t probes = 0;          // candidates a sequential sweep would touch
  ProbeStats stats;                  // summed over exactly those candidates
};

// Evaluates probe(0..count-1) in order and returns the least index yielding a
// witness. With several workers the probes run concurrently, but the reported
// index, witness, stats and any raised error are identical to the sequential
// sweep: stats are summed over the prefix a sequential run would have visited,
// and an error is surfaced only if no earlier candidate verified.
HitResult least_hit(std::size_t count, int workers,
                    const std::function<std::optional<Lasso>(std::size_t, ProbeStats&)>& probe) {
  HitResult out;
  if (count == 0) return out;
  if (workers <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      ProbeStats ps;
      auto w = probe(i, ps);
      out.stats.nodes += ps.nodes;
      out.stats.subsets += ps.subsets;
      ++out.probes;
      if (w) {
        out.index = i;
        out.witness = std::move(w);
        break;
      }
    }
    return out;
  }

  std::vector<ProbeStats> stats(count);
  std::vector<std::optional<Lasso>> hits(count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  std::atomic<std::size_t> first_error{count};
  std::mutex err_mu;
  std::exception_ptr error;

  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      if (i > best.load() || i > first_error.load()) continue;
      try {
        hits[i] = probe(i, stats[i]);
      } catch (...) {
        std::size_t prev = first_error.load();
        while (i < prev && !first_error.compare_exchange_weak(prev, i)) {
        }
        std::lock_guard<std::mutex> lk(err_mu);
        if (first_error.load() == i) error = std::current_exception();
        continue;
      }
      if (hits[i]) {
        std::size_t prev = best.load();
        while (i < prev && !best.compare_exchange_weak(prev, i)) {
        }
      }
    }
  };

  std::vector<std::thread> pool;
  int nw = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), count));
  pool.reserve(static_cast<std::size_t>(nw - 1));
  for (int k = 1; k < nw; ++k) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();

  std::size_t b = best.load();
  if (first_error.load() < b) std::rethrow_exception(error);
  out.probes = (b < count) ? b + 1 : count;
  for (std::size_t i = 0; i < out.probes; ++i) {
    out.stats.nodes += stats[i].nodes;
    out.stats.subsets += stats[i].subsets;
  }
  if (b < count) {
    out.index = b;
    out.witness = std::move(hits[b]);
  }
  return out;
}

// Distinct loser sets a sequential sweep of the counted prefix solves; keeps
// the regions_solved stat independent of worker scheduling.
std::uint64_t prefix_regions(const std::vector<std::uint32_t>& cand, std::uint64_t probes,
                             std::uint32_t full) {
  std::set<std::uint32_t> keys;
  for (std::uint64_t i = 0; i < probes; ++i) keys.insert(full & ~cand[i]);
  return keys.size();
}

// Positions the search may occupy: configurations of the deviation arena that
// the protagonist wins. `touched` arrives as the agent mask of losers whose
// occurrence set the play has visited so far.
class RegionFilter final : public LassoFilter {
 public:
  RegionFilter(const DecisionContext& ctx, const WinningRegion& r) : ctx_(ctx), r_(r) {}

  bool state_ok(int s, std::uint32_t touched) const override {
    int e = ctx_.eve_at(s);
    if (e < 0) return false;
    return r_.eve(e, r_.bt.compact(touched));
  }
  bool edge_ok(int s, std::uint32_t touched, int t) const override {
    int e = ctx_.eve_at(s);
    if (e < 0) return false;
    std::uint32_t c = r_.bt.compact(touched);
    for (int ad : ctx_.proposals_to(e, t))
      if (r_.adam(ad, c)) return true;
    return false;
  }

 private:
  const DecisionContext& ctx_;
  const WinningRegion& r_;
};

// Least stable lasso with payoff exactly p, if any, within the context bounds.
std::optional<Lasso> check_profile(DecisionContext& ctx, std::uint32_t p, ProbeStats* ps) {
  if (const std::optional<Lasso>* hit = ctx.stable_find(p)) return *hit;
  const WinningRegion& r = ctx.region(ctx.full_mask() & ~p);
  int e0 = ctx.eve_at(ctx.source());
  if (e0 < 0 || !r.eve(e0, r.bt.touch[static_cast<std::size_t>(ctx.source())]))
    return std::nullopt;
  RegionFilter f(ctx, r);
  SearchStats st;
  auto w = find_profile_lasso(ctx.game(), ctx.source(), p, ctx.bounds(), &f, &st);
  if (ps != nullptr) {
    ps->nodes += st.nodes;
    ps->subsets += st.subsets;
  }
  if (w && !verify_ne_lasso(ctx, *w))
    raise(ErrorKind::Internal, "stability search returned a lasso that fails re-verification");
  ctx.stable_put(p, w);
  return w;
}

void require_threshold(const Game& g, int v) {
  if (v < 0 || v > g.n_agents)
    raise(ErrorKind::Usage, "welfare threshold must lie between 0 and the agent count");
}

// Shared body of the welfare sweep: candidates with >= v winners, best welfare
// first, drawn from `pool` minus anything in `skip`.
std::vector<std::uint32_t> welfare_candidates(const std::vector<std::uint32_t>& pool, int v,
                                              const std::set<std::uint32_t>* skip) {
  std::vector<std::uint32_t> cand;
  for (std::uint32_t p : pool) {
    if (std::popcount(p) < v) continue;
    if (skip != nullptr && skip->count(p) != 0) continue;
    cand.push_back(p);
  }
  std::stable_sort(cand.begin(), cand.end(), [](std::uint32_t a, std::uint32_t b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  return cand;
}

}  // namespace

// ------------------------------------------------------------ DecisionContext

DecisionContext::DecisionContext(Game game, int source, DecisionOptions opts)
    : g_(std::move(game)), source_(source), opts_(opts) {
  if (source_ < 0 || source_ >= g_.state_count())
    raise(ErrorKind::Usage, "source state id out of range");
  bounds_ = opts_.bounds.value_or(default_bounds(g_));
  if (bounds_.cycle == 0) raise(ErrorKind::Usage, "cycle bound must be positive");
  full_ = (g_.n_agents >= 32) ? ~0u : ((1u << g_.n_agents) - 1u);
  workers_ = resolve_workers(opts_.workers);
  arena_ = build_suspect_arena(g_, source_);

  eve_at_.assign(static_cast<std::size_t>(g_.state_count()), -1);
  for (int s = 0; s < g_.state_count(); ++s)
    eve_at_[static_cast<std::size_t>(s)] = arena_.find_eve(s, full_);

  props_.resize(static_cast<std::size_t>(arena_.eve_count()));
  for (int e = 0; e < arena_.eve_count(); ++e) {
    std::vector<std::pair<int, int>> flat;  // (prescribed target, adam id)
    for (int ad : arena_.eve_succ[static_cast<std::size_t>(e)]) {
      for (const auto& edge : arena_.adam_succ[static_cast<std::size_t>(ad)]) {
        if (edge.obey) {
          flat.emplace_back(edge.target, ad);
          break;
        }
      }
    }
    std::sort(flat.begin(), flat.end());
    auto& rows = props_[static_cast<std::size_t>(e)];
    for (const auto& [target, ad] : flat) {
      if (rows.empty() || rows.back().first != target) rows.push_back({target, {}});
      rows.back().second.push_back(ad);
    }
  }
}

const std::vector<int>& DecisionContext::proposals_to(int eve_id, int target) const {
  const auto& rows = props_[static_cast<std::size_t>(eve_id)];
  auto it = std::lower_bound(rows.begin(), rows.end(), target,
                             [](const auto& row, int t) { return row.first < t; });
  if (it == rows.end() || it->first != target) return no_props_;
  return it->second;
}

const WinningRegion& DecisionContext::region(std::uint32_t losers) {
  RegionEntry* ent = nullptr;
  bool creator = false;
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto& slot = regions_[losers];
    if (!slot) {
      slot = std::make_unique<RegionEntry>();
      creator = true;
    }
    ent = slot.get();
  }
  if (creator) {
    try {
      WinningRegion r = solve_eve_region(g_, arena_, losers, opts_.backend, opts_.oracle_budget);
      {
        std::lock_guard<std::mutex> lk(ent->m);
        ent->region = std::move(r);
        ent->ready = true;
      }
      regions_solved_.fetch_add(1);
    } catch (...) {
      std::lock_guard<std::mutex> lk(ent->m);
      ent->error = std::current_exception();
      ent->ready = true;
    }
    ent->cv.notify_all();
  }
  std::unique_lock<std::mutex> lk(ent->m);
  ent->cv.wait(lk, [&] { return ent->ready; });
  if (ent->error) std::rethrow_exception(ent->error);
  return ent->region;
}

const std::vector<std::uint32_t>& DecisionContext::achievable() {
  std::lock_guard<std::mutex> lk(ach_mu_);
  if (!ach_) ach_ = achievable_profiles(g_, source_, bounds_, nullptr);
  return *ach_;
}

const std::optional<Lasso>* DecisionContext::stable_find(std::uint32_t profile) {
  std::lock_guard<std::mutex> lk(stable_mu_);
  auto it = stable_.find(profile);
  return it == stable_.end() ? nullptr : &it->second;
}

void DecisionContext::stable_put(std::uint32_t profile, const std::optional<Lasso>& result) {
  std::lock_guard<std::mutex> lk(stable_mu_);
  stable_.emplace(profile, result);
}

// ---------------------------------------------------------------- verification

bool verify_ne_lasso(DecisionContext& ctx, const Lasso& lasso) {
  const Game& g = ctx.game();
  if (lasso.cycle.empty() || !lasso_is_play(g, lasso, ctx.source()))
    raise(ErrorKind::Validation, "witness is not a play from the source state");
  std::uint32_t pay = payoff_of_lasso(g, lasso).bits;
  const WinningRegion& r = ctx.region(ctx.full_mask() & ~pay);

  // Walk stem . cycle . cycle: after one full turn of the cycle the touch
  // bookkeeping has stabilized, so this visits every configuration of the
  // infinite play.
  std::vector<int> seq;
  seq.reserve(lasso.stem.size() + 2 * lasso.cycle.size());
  seq.insert(seq.end(), lasso.stem.begin(), lasso.stem.end());
  seq.insert(seq.end(), lasso.cycle.begin(), lasso.cycle.end());
  seq.insert(seq.end(), lasso.cycle.begin(), lasso.cycle.end());

  std::uint32_t B = 0;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    int s = seq[k];
    int e = ctx.eve_at(s);
    if (e < 0) return false;
    B |= r.bt.touch[static_cast<std::size_t>(s)];
    if (!r.eve(e, B)) return false;
    int t = (k + 1 < seq.size()) ? seq[k + 1] : lasso.cycle.front();
    bool step_ok = false;
    for (int ad : ctx.proposals_to(e, t)) {
      if (r.adam(ad, B)) {
        step_ok = true;
        break;
      }
    }
    if (!step_ok) return false;
  }
  return true;
}

// ------------------------------------------------------------------- deciders

Decision constrained_ne_exists(DecisionContext& ctx, const WinnerProfile& lower,
                               const WinnerProfile& upper) {
  const int n = ctx.game().n_agents;
  if (lower.n != n || upper.n != n)
    raise(ErrorKind::Usage, "payoff bounds must have one bit per agent");
  if (!profile_geq(upper.bits, lower.bits))
    raise(ErrorKind::Usage, "lower payoff bound exceeds the upper bound");

  std::vector<std::uint32_t> cand;
  for (std::uint32_t p : ctx.achievable())
    if (profile_geq(p, lower.bits) && profile_geq(upper.bits, p)) cand.push_back(p);

  auto hit = least_hit(cand.size(), ctx.workers(), [&](std::size_t i, ProbeStats& ps) {
    return check_profile(ctx, cand[i], &ps);
  });

  Decision d;
  d.method = "generic";
  if (hit.index) {
    d.yes = true;
    d.witness = std::move(hit.witness);
    d.profile = WinnerProfile{cand[*hit.index], n};
  }
  d.stats = {{"candidate_profiles", cand.size()},
             {"profiles_examined", hit.probes},
             {"regions_solved", prefix_regions(cand, hit.probes, ctx.full_mask())},
             {"search_nodes", hit.stats.nodes},
             {"cycle_subsets", hit.stats.subsets}};
  return d;
}

Decision swdp(DecisionContext& ctx, int threshold) {
  require_threshold(ctx.game(), threshold);
  std::vector<std::uint32_t> cand = welfare_candidates(ctx.achievable(), threshold, nullptr);
  auto hit = least_hit(cand.size(), ctx.workers(), [&](std::size_t i, ProbeStats& ps) {
    return check_profile(ctx, cand[i], &ps);
  });

  Decision d;
  d.method = "generic";
  if (hit.index) {
    d.yes = true;
    d.witness = std::move(hit.witness);
    d.profile = WinnerProfile{cand[*hit.index], ctx.game().n_agents};
  }
  d.stats = {{"candidate_profiles", cand.size()},
             {"profiles_examined", hit.probes},
             {"regions_solved", prefix_regions(cand, hit.probes, ctx.full_mask())},
             {"search_nodes", hit.stats.nodes},
             {"cycle_subsets", hit.stats.subsets}};
  return d;
}

Decision swdp_buchi(DecisionContext& ctx, int threshold) {
  const Game& g = ctx.game();
  for (const Objective& o : g.objectives)
    if (o.kind != ObjectiveKind::Buchi)
      raise(ErrorKind::Usage, "the ranked-component method needs a visit-infinitely "
                              "objective for every agent");
  require_threshold(g, threshold);

  // Rank every reachable strongly connected component by the number of
  // accepting sets it meets; try the ranked profiles best-first.
  auto sccs = tarjan_sccs(g, ctx.source());
  struct Entry {
    int rank;
    std::uint64_t mask;
    std::uint32_t profile;
  };
  std::vector<Entry> entries;
  for (std::uint64_t c : sccs) {
    std::uint32_t p = 0;
    for (int i = 0; i < g.n_agents; ++i)
      if ((g.objectives[static_cast<std::size_t>(i)].set & c) != 0) p |= 1u << i;
    int rank = std::popcount(p);
    if (rank >= threshold) entries.push_back({rank, c, p});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.rank != b.rank) return a.rank > b.rank;
    return a.mask < b.mask;
  });
  std::set<std::uint32_t> tried;
  std::vector<std::uint32_t> cand;
  for (const Entry& e : entries)
    if (tried.insert(e.profile).second) cand.push_back(e.profile);

  auto hit = least_hit(cand.size(), ctx.workers(), [&](std::size_t i, ProbeStats& ps) {
    return check_profile(ctx, cand[i], &ps);
  });

  Decision d;
  d.method = "buchi-scc";
  if (hit.index) {
    d.yes = true;
    d.witness = std::move(hit.witness);
    d.profile = WinnerProfile{cand[*hit.index], g.n_agents};
    d.stats = {{"scc_count", sccs.size()},
               {"scc_candidates", cand.size()},
               {"profiles_examined", hit.probes},
               {"regions_solved", prefix_regions(cand, hit.probes, ctx.full_mask())},
               {"search_nodes", hit.stats.nodes},
               {"cycle_subsets", hit.stats.subsets},
               {"generic_completion", 0}};
    return d;
  }

  // No ranked component profile is a stable payoff. The ranked pass alone is
  // incomplete (a stable play may win only part of a component's sets), so
  // finish with the generic welfare sweep over the remaining candidates.
  std::vector<std::uint32_t> rest = welfare_candidates(ctx.achievable(), threshold, &tried);
  auto hit2 = least_hit(rest.size(), ctx.workers(), [&](std::size_t i, ProbeStats& ps) {
    return check_profile(ctx, rest[i], &ps);
  });
  if (hit2.index) {
    d.yes = true;
    d.witness = std::move(hit2.witness);
    d.profile = WinnerProfile{rest[*hit2.index], g.n_agents};
  }
  d.stats = {{"scc_count", sccs.size()},
             {"scc_candidates", cand.size()},
             {"profiles_examined", hit.probes + hit2.probes},
             {"regions_solved",
              prefix_regions(cand, hit.probes, ctx.full_mask()) +
                  prefix_regions(rest, hit2.probes, ctx.full_mask())},
             {"search_nodes", hit.stats.nodes + hit2.stats.nodes},
             {"cycle_subsets", hit.stats.subsets + hit2.stats.subsets},
             {"generic_completion", 1}};
  return d;
}

Decision podp(DecisionContext& ctx) {
  const auto& ach = ctx.achievable();
  std::vector<std::uint32_t> front = pareto_front(ach);
  auto hit = least_hit(front.size(), ctx.workers(), [&](std::size_t i, ProbeStats& ps) {
    return check_profile(ctx, front[i], &ps);
  });

  Decision d;
  d.method = "exact";
  if (hit.index) {
    d.yes = true;
    d.witness = std::move(hit.witness);
    d.profile = WinnerProfile{front[*hit.index], ctx.game().n_agents};
  }
  d.stats = {{"achievable_profiles", ach.size()},
             {"pareto_profiles", front.size()},
             {"profiles_examined", hit.probes},
             {"regions_solved", prefix_regions(front, hit.probes, ctx.full_mask())},
             {"search_nodes", hit.stats.nodes},
             {"cycle_subsets", hit.stats.subsets}};
  return d;
}

Decision podp_count_variant(DecisionContext& ctx) {
  const int n = ctx.game().n_agents;
  std::map<int, Decision> probed;
  auto probe = [&](int v) -> const Decision& {
    auto it = probed.find(v);
    if (it == probed.end()) it = probed.emplace(v, swdp(ctx, v)).first;
    return it->second;
  };

  Decision d;
  d.method = "count-variant";
  if (!probe(0).yes) {
    d.stats = {{"swdp_probes", probed.size()},
               {"equilibrium_found", 0},
               {"max_equilibrium_welfare", 0},
               {"max_play_welfare", 0}};
    return d;
  }
  int lo = 0, hi = n;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (probe(mid).yes)
      lo = mid;
    else
      hi = mid - 1;
  }
  const int best_stable = lo;

  int best_play = 0;
  for (std::uint32_t p : ctx.achievable()) best_play = std::max(best_play, std::popcount(p));

  if (best_play <= best_stable) {
    const Decision& at = probe(best_stable);
    d.yes = true;
    d.witness = at.witness;
    d.profile = at.profile;
  }
  d.stats = {{"swdp_probes", probed.size()},
             {"equilibrium_found", 1},
             {"max_equilibrium_welfare", static_cast<std::uint64_t>(best_stable)},
             {"max_play_welfare", static_cast<std::uint64_t>(best_play)}};
  return d;
}

// ---------------------------------------------------------- one-shot wrappers

bool verify_ne_lasso(const Game& g, int source, const Lasso& lasso,
                     const DecisionOptions& opts) {
  DecisionContext ctx(g, source, opts);
  return verify_ne_lasso(ctx, lasso);
}

Decision constrained_ne_exists(const Game& g, int source, const WinnerProfile& lower,
                               const WinnerProfile& upper, const DecisionOptions& opts) {
  DecisionContext ctx(g, source, opts);
  return constrained_ne_exists(ctx, lower, upper);
}

Decision swdp(const Game& g, int source, int threshold, const DecisionOptions& opts) {
  DecisionContext ctx(g, source, opts);
  return swdp(ctx, threshold);
}

Decision swdp_buchi(const Game& g, int source, int threshold, const DecisionOptions& opts) {
  DecisionContext ctx(g, source, opts);
  return swdp_buchi(ctx, threshold);
}

Decision podp(const Game& g, int source, const DecisionOptions& opts) {
  DecisionContext ctx(g, source, opts);
  return podp(ctx);
}

Decision podp_count_variant(const Game& g, int source, const DecisionOptions& opts) {
  DecisionContext ctx(g, source, opts);
  return podp_count_variant(ctx);
}

}  // namespace releq
