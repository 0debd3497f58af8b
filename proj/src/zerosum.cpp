#include "releq/zerosum.hpp"

#include <algorithm>
#include <deque>

namespace releq {

namespace {

constexpr std::size_t kProductCap = 8'000'000;

std::vector<std::vector<int>> predecessors(const TwoPlayerGraph& g) {
  std::vector<std::vector<int>> pred(static_cast<std::size_t>(g.size()));
  for (int v = 0; v < g.size(); ++v)
    for (int w : g.succ[static_cast<std::size_t>(v)])
      pred[static_cast<std::size_t>(w)].push_back(v);
  return pred;
}

// Attractor restricted to the `alive` subgame.
std::vector<char> attr_in(const TwoPlayerGraph& g, const std::vector<std::vector<int>>& pred,
                          const std::vector<char>& target, const std::vector<char>& alive,
                          bool for_eve) {
  const std::size_t n = static_cast<std::size_t>(g.size());
  std::vector<char> in(n, 0);
  std::vector<int> cnt(n, 0);
  std::deque<int> work;
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (int w : g.succ[v])
      if (alive[static_cast<std::size_t>(w)]) ++cnt[v];
    if (target[v]) {
      in[v] = 1;
      work.push_back(static_cast<int>(v));
    }
  }
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    for (int u : pred[static_cast<std::size_t>(v)]) {
      auto ui = static_cast<std::size_t>(u);
      if (!alive[ui] || in[ui]) continue;
      bool mine = (g.eve_owned[ui] != 0) == for_eve;
      if (mine || --cnt[ui] == 0) {
        in[ui] = 1;
        work.push_back(u);
      }
    }
  }
  return in;
}

// Recursive max-parity solver over shrinking subgames.
struct ParitySolver {
  const TwoPlayerGraph& g;
  const std::vector<int>& pri;
  std::vector<std::vector<int>> pred;
  std::vector<char> eve_wins;

  ParitySolver(const TwoPlayerGraph& gg, const std::vector<int>& p)
      : g(gg), pri(p), pred(predecessors(gg)),
        eve_wins(static_cast<std::size_t>(gg.size()), 0) {}

  void run(std::vector<char> alive) {
    const std::size_t n = static_cast<std::size_t>(g.size());
    int d = -1;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) d = std::max(d, pri[v]);
    if (d < 0) return;
    const bool sigma_eve = (d % 2 == 0);
    while (true) {
      std::vector<char> top(n, 0);
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && pri[v] == d) top[v] = 1;
      auto reach_top = attr_in(g, pred, top, alive, sigma_eve);
      std::vector<char> rest(n, 0);
      bool rest_any = false;
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && !reach_top[v]) rest[v] = rest_any = true;
      std::vector<char> opp_rest(n, 0);
      bool opp_any = false;
      if (rest_any) {
        run(rest);
        for (std::size_t v = 0; v < n; ++v)
          if (rest[v] && (eve_wins[v] != 0) != sigma_eve) opp_rest[v] = opp_any = true;
      }
      if (!opp_any) {
        for (std::size_t v = 0; v < n; ++v)
          if (alive[v]) eve_wins[v] = sigma_eve ? 1 : 0;
        return;
      }
      auto ceded = attr_in(g, pred, opp_rest, alive, !sigma_eve);
      bool remaining = false;
      for (std::size_t v = 0; v < n; ++v)
        if (ceded[v]) {
          eve_wins[v] = sigma_eve ? 0 : 1;
          alive[v] = 0;
        } else if (alive[v]) {
          remaining = true;
        }
      if (!remaining) return;
      d = -1;
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v]) d = std::max(d, pri[v]);
      if ((d % 2 == 0) != sigma_eve) {
        // The top priority flipped sides; restart on the remainder.
        run(alive);
        return;
      }
    }
  }
};

// Recursive solver for an arbitrary condition on the set of colours occurring
// infinitely often.
struct MullerSolver {
  const TwoPlayerGraph& g;
  const std::vector<int>& colour;
  const std::function<bool(std::uint32_t)>& accepts;
  std::vector<std::vector<int>> pred;
  std::vector<char> eve_wins;

  MullerSolver(const TwoPlayerGraph& gg, const std::vector<int>& c,
               const std::function<bool(std::uint32_t)>& acc)
      : g(gg), colour(c), accepts(acc), pred(predecessors(gg)),
        eve_wins(static_cast<std::size_t>(gg.size()), 0) {}

  void run(std::vector<char> alive) {
    const std::size_t n = static_cast<std::size_t>(g.size());
    std::uint32_t all = 0;
    bool any = false;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) {
        all |= 1u << colour[v];
        any = true;
      }
    if (!any) return;
    const bool sigma_eve = accepts(all);
    // Children: maximal proper colour subsets where acceptance flips.
    std::vector<std::uint32_t> children;
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t c = (all - 1) & all;; c = (c - 1) & all) {
      subsets.push_back(c);
      if (c == 0) break;
    }
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](std::uint32_t x, std::uint32_t y) {
                       return std::popcount(x) > std::popcount(y);
                     });
    for (std::uint32_t c : subsets) {
      if (accepts(c) == sigma_eve) continue;
      bool covered = false;
      for (std::uint32_t kept : children)
        if ((c & ~kept) == 0) {
          covered = true;
          break;
        }
      if (!covered) children.push_back(c);
    }
    for (std::uint32_t child : children) {
      std::vector<char> leave(n, 0);
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && ((child >> colour[v]) & 1u) == 0) leave[v] = 1;
      auto grab = attr_in(g, pred, leave, alive, sigma_eve);
      std::vector<char> trapped(n, 0);
      bool trapped_any = false;
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && !grab[v]) trapped[v] = trapped_any = true;
      if (!trapped_any) continue;
      run(trapped);
      std::vector<char> opp(n, 0);
      bool opp_any = false;
      for (std::size_t v = 0; v < n; ++v)
        if (trapped[v] && (eve_wins[v] != 0) != sigma_eve) opp[v] = opp_any = true;
      if (!opp_any) continue;
      auto ceded = attr_in(g, pred, opp, alive, !sigma_eve);
      for (std::size_t v = 0; v < n; ++v)
        if (ceded[v]) {
          eve_wins[v] = sigma_eve ? 0 : 1;
          alive[v] = 0;
        }
      run(alive);  // colours may have shrunk; start over on the remainder
      return;
    }
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) eve_wins[v] = sigma_eve ? 1 : 0;
  }
};

}  // namespace

std::vector<char> attractor(const TwoPlayerGraph& g, const std::vector<char>& target,
                            bool for_eve) {
  std::vector<char> alive(static_cast<std::size_t>(g.size()), 1);
  return attr_in(g, predecessors(g), target, alive, for_eve);
}

std::vector<char> buchi_win(const TwoPlayerGraph& g, const std::vector<char>& target,
                            bool for_eve) {
  const std::size_t n = static_cast<std::size_t>(g.size());
  auto pred = predecessors(g);
  std::vector<char> alive(n, 1);
  while (true) {
    std::vector<char> live_target(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v] && target[v]) live_target[v] = 1;
    auto reach = attr_in(g, pred, live_target, alive, for_eve);
    std::vector<char> evade(n, 0);
    bool evade_any = false;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v] && !reach[v]) evade[v] = evade_any = true;
    if (!evade_any) break;
    auto lost = attr_in(g, pred, evade, alive, !for_eve);
    for (std::size_t v = 0; v < n; ++v)
      if (lost[v]) alive[v] = 0;
  }
  return alive;
}

std::vector<char> parity_win_max(const TwoPlayerGraph& g, const std::vector<int>& priority) {
  ParitySolver solver(g, priority);
  solver.run(std::vector<char>(static_cast<std::size_t>(g.size()), 1));
  return solver.eve_wins;
}

std::vector<char> muller_win(const TwoPlayerGraph& g, const std::vector<int>& colour,
                             const std::function<bool(std::uint32_t)>& eve_accepts) {
  for (int c : colour)
    if (c < 0 || c > 15)
      raise(ErrorKind::Budget, "condition solver limited to 16 distinct colours");
  MullerSolver solver(g, colour, eve_accepts);
  solver.run(std::vector<char>(static_cast<std::size_t>(g.size()), 1));
  return solver.eve_wins;
}

// ----------------------------------------------------------- loser bookkeeping

BTracking make_b_tracking(const Game& g, std::uint32_t losers) {
  BTracking bt;
  bt.bitpos.assign(static_cast<std::size_t>(g.n_agents), -1);
  bt.touch.assign(static_cast<std::size_t>(g.state_count()), 0);
  ObjectiveKind kind = require_uniform_class(g);
  if (kind != ObjectiveKind::Reach && kind != ObjectiveKind::Safe) return bt;
  for (int i = 0; i < g.n_agents; ++i) {
    if (((losers >> i) & 1u) == 0) continue;
    if (g.objectives[static_cast<std::size_t>(i)].set == 0) continue;
    bt.bitpos[static_cast<std::size_t>(i)] = bt.b++;
  }
  if (bt.b > 25) raise(ErrorKind::Budget, "too many tracked losers for progress bits");
  for (int s = 0; s < g.state_count(); ++s)
    for (int i = 0; i < g.n_agents; ++i)
      if (bt.bitpos[static_cast<std::size_t>(i)] >= 0 &&
          ((g.objectives[static_cast<std::size_t>(i)].set >> s) & 1ull))
        bt.touch[static_cast<std::size_t>(s)] |=
            1u << bt.bitpos[static_cast<std::size_t>(i)];
  return bt;
}

bool eve_good(const Game& g, std::uint32_t losers, std::uint32_t accountable,
              std::uint32_t touched, std::uint64_t inf_states) {
  const std::uint32_t active = losers & accountable;
  if (active == 0) return true;
  ObjectiveKind kind = require_uniform_class(g);
  for (std::uint32_t m = active; m; m &= m - 1) {
    const int i = std::countr_zero(m);
    const Objective& o = g.objectives[static_cast<std::size_t>(i)];
    switch (kind) {
      case ObjectiveKind::Reach:
        if ((touched >> i) & 1u) return false;
        break;
      case ObjectiveKind::Safe:
        if (((touched >> i) & 1u) == 0) return false;
        break;
      case ObjectiveKind::Buchi:
        if ((o.set & inf_states) != 0) return false;
        break;
      case ObjectiveKind::CoBuchi:
        if ((o.set & inf_states) == 0) return false;
        break;
      case ObjectiveKind::Parity: {
        int best = -1;
        for (std::uint64_t s = inf_states; s; s &= s - 1) {
          int pr = o.priority[static_cast<std::size_t>(std::countr_zero(s))];
          if (best < 0 || pr < best) best = pr;
        }
        if (best < 0 || best % 2 == 0) return false;
        break;
      }
      case ObjectiveKind::Muller: {
        std::uint64_t cols = 0;
        for (std::uint64_t s = inf_states; s; s &= s - 1)
          cols |= 1ull << o.colour[static_cast<std::size_t>(std::countr_zero(s))];
        if (std::find(o.family.begin(), o.family.end(), cols) != o.family.end())
          return false;
        break;
      }
    }
  }
  return true;
}

// ----------------------------------------------------------------- fixpoints

namespace {

// Flat product for the touch-decided classes and for the class where a loser
// that stays accountable must eventually stop visiting its accept set: Eve
// wins iff the play eventually stays clear of flagged vertices.
WinningRegion flat_region(const Game& g, const SuspectArena& a, std::uint32_t losers,
                          ObjectiveKind kind) {
  WinningRegion r;
  r.losers = losers;
  r.bt = make_b_tracking(g, losers);
  const std::size_t en = static_cast<std::size_t>(a.eve_count()) << r.bt.b;
  const std::size_t an = static_cast<std::size_t>(a.adam_count()) << r.bt.b;
  if (en + an > kProductCap)
    raise(ErrorKind::Budget, "deviation product too large: " + std::to_string(en + an) +
                                 " vertices");
  const std::size_t total = en + an;
  const std::uint32_t bmask = (r.bt.b >= 32) ? ~0u : ((1u << r.bt.b) - 1u);
  TwoPlayerGraph pg;
  pg.succ.resize(total);
  pg.eve_owned.assign(total, 0);
  std::vector<char> flagged(total, 0);
  // Vertex layout: eve (v, B) at (v << b) | B, adam (d, B) at en + ((d << b) | B).
  for (std::size_t v = 0; v < static_cast<std::size_t>(a.eve_count()); ++v) {
    const std::uint32_t acc = a.eve[v].accountable;
    for (std::uint32_t B = 0;; ++B) {
      const std::size_t id = (v << r.bt.b) | B;
      pg.eve_owned[id] = 1;
      for (int ad : a.eve_succ[v])
        pg.succ[id].push_back(
            static_cast<int>(en + ((static_cast<std::size_t>(ad) << r.bt.b) | B)));
      bool bad = false;
      switch (kind) {
        case ObjectiveKind::Reach:
          bad = (acc & r.bt.expand(B)) != 0;
          break;
        case ObjectiveKind::Safe: {
          // A still-accountable loser is unsatisfied while untouched; losers
          // with an empty unsafe set can never be touched at all.
          std::uint32_t needed = acc & losers;
          std::uint32_t done = r.bt.expand(B);
          for (std::uint32_t m = needed; m; m &= m - 1) {
            int i = std::countr_zero(m);
            if (r.bt.bitpos[static_cast<std::size_t>(i)] < 0 || ((done >> i) & 1u) == 0) {
              bad = true;
              break;
            }
          }
          break;
        }
        case ObjectiveKind::Buchi: {
          const std::uint64_t here = 1ull << a.eve[v].state;
          for (std::uint32_t m = acc & losers; m; m &= m - 1) {
            int i = std::countr_zero(m);
            if (g.objectives[static_cast<std::size_t>(i)].set & here) {
              bad = true;
              break;
            }
          }
          break;
        }
        default:
          raise(ErrorKind::Internal, "flat solver fed a layered class");
      }
      flagged[id] = bad ? 1 : 0;
      if (B == bmask) break;
    }
  }
  for (std::size_t d = 0; d < static_cast<std::size_t>(a.adam_count()); ++d) {
    for (std::uint32_t B = 0;; ++B) {
      const std::size_t id = en + ((d << r.bt.b) | B);
      for (const auto& e : a.adam_succ[d]) {
        const std::uint32_t B2 = B | r.bt.touch[static_cast<std::size_t>(e.target)];
        pg.succ[id].push_back(
            static_cast<int>((static_cast<std::size_t>(e.eve) << r.bt.b) | B2));
      }
      if (B == bmask) break;
    }
  }
  auto adam_forces = buchi_win(pg, flagged, false);
  r.eve_win.assign(en, 0);
  r.adam_win.assign(an, 0);
  for (std::size_t v = 0; v < en; ++v) r.eve_win[v] = adam_forces[v] ? 0 : 1;
  for (std::size_t d = 0; d < an; ++d) r.adam_win[d] = adam_forces[en + d] ? 0 : 1;
  return r;
}

// Layered solving: accountable sets only ever shrink along arena moves, so the
// vertices of one accountable set form a slice whose exits lead to already
// solved slices. Exits collapse to a winning or losing sink.
struct Layer {
  std::vector<int> eve_ids, adam_ids;
  std::vector<int> eve_local, adam_local;  // arena id -> local id or -1
  int eve_n = 0, adam_n = 0;
};

Layer collect_layer(const SuspectArena& a, std::uint32_t acc) {
  Layer l;
  l.eve_local.assign(a.eve.size(), -1);
  l.adam_local.assign(a.adam.size(), -1);
  for (std::size_t v = 0; v < a.eve.size(); ++v)
    if (a.eve[v].accountable == acc) {
      l.eve_local[v] = l.eve_n++;
      l.eve_ids.push_back(static_cast<int>(v));
    }
  for (std::size_t d = 0; d < a.adam.size(); ++d)
    if (a.eve[static_cast<std::size_t>(a.adam[d].eve)].accountable == acc) {
      l.adam_local[d] = l.adam_n++;
      l.adam_ids.push_back(static_cast<int>(d));
    }
  return l;
}

// Layer solver for the class where every accountable loser must keep visiting
// its set forever: a rotating pointer awaits each required set in turn.
void cobuchi_layer(const Game& g, const SuspectArena& a, std::uint32_t losers,
                   std::uint32_t acc, WinningRegion& r) {
  Layer l = collect_layer(a, acc);
  std::vector<std::uint64_t> need;  // state sets each accountable loser must revisit
  for (std::uint32_t m = acc & losers; m; m &= m - 1)
    need.push_back(g.objectives[static_cast<std::size_t>(std::countr_zero(m))].set);
  const bool trivial = need.empty();
  const int K = trivial ? 1 : static_cast<int>(need.size());
  // Vertex layout: eve locals [0, eve_n*K), adam locals, then win/lose sinks.
  const std::size_t base_adam = static_cast<std::size_t>(l.eve_n) * K;
  const std::size_t total = base_adam + static_cast<std::size_t>(l.adam_n) * K + 2;
  const int sink_win = static_cast<int>(total - 2), sink_lose = static_cast<int>(total - 1);
  if (total > kProductCap) raise(ErrorKind::Budget, "layer product too large");
  TwoPlayerGraph pg;
  pg.succ.resize(total);
  pg.eve_owned.assign(total, 0);
  std::vector<char> mark(total, 0);
  auto hits = [&](int state, int k) {
    return trivial || ((need[static_cast<std::size_t>(k)] >> state) & 1ull) != 0;
  };
  for (int le = 0; le < l.eve_n; ++le) {
    const int v = l.eve_ids[static_cast<std::size_t>(le)];
    const int s = a.eve[static_cast<std::size_t>(v)].state;
    for (int k = 0; k < K; ++k) {
      const std::size_t id = static_cast<std::size_t>(le) * K + k;
      pg.eve_owned[id] = 1;
      const int k2 = hits(s, k) ? (k + 1) % K : k;
      if (hits(s, k) && k == K - 1) mark[id] = 1;
      for (int ad : a.eve_succ[static_cast<std::size_t>(v)])
        pg.succ[id].push_back(static_cast<int>(
            base_adam + static_cast<std::size_t>(l.adam_local[static_cast<std::size_t>(ad)]) * K +
            k2));
    }
  }
  for (int ld = 0; ld < l.adam_n; ++ld) {
    const int d = l.adam_ids[static_cast<std::size_t>(ld)];
    for (int k = 0; k < K; ++k) {
      const std::size_t id = base_adam + static_cast<std::size_t>(ld) * K + k;
      for (const auto& e : a.adam_succ[static_cast<std::size_t>(d)]) {
        if (a.eve[static_cast<std::size_t>(e.eve)].accountable == acc) {
          pg.succ[id].push_back(
              static_cast<int>(static_cast<std::size_t>(l.eve_local[static_cast<std::size_t>(e.eve)]) * K + k));
        } else {
          pg.succ[id].push_back(r.eve(e.eve, 0) ? sink_win : sink_lose);
        }
      }
    }
  }
  pg.succ[static_cast<std::size_t>(sink_win)].push_back(sink_win);
  pg.succ[static_cast<std::size_t>(sink_lose)].push_back(sink_lose);
  mark[static_cast<std::size_t>(sink_win)] = 1;
  auto win = buchi_win(pg, mark, true);
  for (int le = 0; le < l.eve_n; ++le)
    r.eve_win[static_cast<std::size_t>(l.eve_ids[static_cast<std::size_t>(le)])] =
        win[static_cast<std::size_t>(le) * K];
  for (int ld = 0; ld < l.adam_n; ++ld)
    r.adam_win[static_cast<std::size_t>(l.adam_ids[static_cast<std::size_t>(ld)])] =
        win[base_adam + static_cast<std::size_t>(ld) * K];
}

// Layer solver for the classes whose verdict depends on the exact set of
// states visited forever: colours are the layer's game states plus two sinks.
void muller_layer(const Game& g, const SuspectArena& a, std::uint32_t losers,
                  std::uint32_t acc, WinningRegion& r) {
  Layer l = collect_layer(a, acc);
  std::vector<int> colour_of_state(static_cast<std::size_t>(g.state_count()), -1);
  std::vector<int> state_of_colour;
  for (int le = 0; le < l.eve_n; ++le) {
    int s = a.eve[static_cast<std::size_t>(l.eve_ids[static_cast<std::size_t>(le)])].state;
    if (colour_of_state[static_cast<std::size_t>(s)] < 0) {
      colour_of_state[static_cast<std::size_t>(s)] = static_cast<int>(state_of_colour.size());
      state_of_colour.push_back(s);
    }
  }
  const int nc = static_cast<int>(state_of_colour.size());
  if (nc + 2 > 16)
    raise(ErrorKind::Budget, "layer with more than 14 distinct states for the "
                             "set-of-states solver");
  const int col_win = nc, col_lose = nc + 1;
  const std::size_t total = static_cast<std::size_t>(l.eve_n) + l.adam_n + 2;
  const int sink_win = static_cast<int>(total - 2), sink_lose = static_cast<int>(total - 1);
  TwoPlayerGraph pg;
  pg.succ.resize(total);
  pg.eve_owned.assign(total, 0);
  std::vector<int> colour(total, 0);
  for (int le = 0; le < l.eve_n; ++le) {
    const int v = l.eve_ids[static_cast<std::size_t>(le)];
    pg.eve_owned[static_cast<std::size_t>(le)] = 1;
    colour[static_cast<std::size_t>(le)] =
        colour_of_state[static_cast<std::size_t>(a.eve[static_cast<std::size_t>(v)].state)];
    for (int ad : a.eve_succ[static_cast<std::size_t>(v)])
      pg.succ[static_cast<std::size_t>(le)].push_back(
          l.eve_n + l.adam_local[static_cast<std::size_t>(ad)]);
  }
  for (int ld = 0; ld < l.adam_n; ++ld) {
    const int d = l.adam_ids[static_cast<std::size_t>(ld)];
    const std::size_t id = static_cast<std::size_t>(l.eve_n) + ld;
    const int s = a.eve[static_cast<std::size_t>(a.adam[static_cast<std::size_t>(d)].eve)].state;
    colour[id] = colour_of_state[static_cast<std::size_t>(s)];
    for (const auto& e : a.adam_succ[static_cast<std::size_t>(d)]) {
      if (a.eve[static_cast<std::size_t>(e.eve)].accountable == acc)
        pg.succ[id].push_back(l.eve_local[static_cast<std::size_t>(e.eve)]);
      else
        pg.succ[id].push_back(r.eve(e.eve, 0) ? sink_win : sink_lose);
    }
  }
  pg.succ[static_cast<std::size_t>(sink_win)].push_back(sink_win);
  pg.succ[static_cast<std::size_t>(sink_lose)].push_back(sink_lose);
  colour[static_cast<std::size_t>(sink_win)] = col_win;
  colour[static_cast<std::size_t>(sink_lose)] = col_lose;
  auto accepts = [&](std::uint32_t colours) {
    if ((colours >> col_win) & 1u) return true;
    if ((colours >> col_lose) & 1u) return false;
    std::uint64_t states = 0;
    for (std::uint32_t m = colours; m; m &= m - 1)
      states |= 1ull << state_of_colour[static_cast<std::size_t>(std::countr_zero(m))];
    return eve_good(g, losers, acc, 0, states);
  };
  auto win = muller_win(pg, colour, accepts);
  for (int le = 0; le < l.eve_n; ++le)
    r.eve_win[static_cast<std::size_t>(l.eve_ids[static_cast<std::size_t>(le)])] =
        win[static_cast<std::size_t>(le)];
  for (int ld = 0; ld < l.adam_n; ++ld)
    r.adam_win[static_cast<std::size_t>(l.adam_ids[static_cast<std::size_t>(ld)])] =
        win[static_cast<std::size_t>(l.eve_n) + ld];
}

}  // namespace

WinningRegion fixpoint_region(const Game& g, const SuspectArena& a, std::uint32_t losers) {
  ObjectiveKind kind = require_uniform_class(g);
  switch (kind) {
    case ObjectiveKind::Reach:
    case ObjectiveKind::Safe:
    case ObjectiveKind::Buchi:
      return flat_region(g, a, losers, kind);
    default:
      break;
  }
  WinningRegion r;
  r.losers = losers;
  r.bt = make_b_tracking(g, losers);  // b == 0 for these classes
  r.eve_win.assign(a.eve.size(), 0);
  r.adam_win.assign(a.adam.size(), 0);
  for (std::uint32_t acc : accountable_layers(a)) {
    if (kind == ObjectiveKind::CoBuchi)
      cobuchi_layer(g, a, losers, acc, r);
    else
      muller_layer(g, a, losers, acc, r);
  }
  return r;
}

WinningRegion solve_eve_region(const Game& g, const SuspectArena& a, std::uint32_t losers,
                               Backend backend, std::uint64_t oracle_budget) {
  if (backend == Backend::Lar) return lar_oracle_solve(g, a, losers, oracle_budget);
  return fixpoint_region(g, a, losers);
}

}  // namespace releq
