#include "releq/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>

namespace releq {

namespace {

constexpr std::uint64_t kNodeCap = 16'000'000;    // class-graph nodes
constexpr std::uint64_t kSubsetCap = 20'000'000;  // exact-engine subsets
constexpr std::uint64_t kEnumCap = 2'000'000;     // literal enumeration steps

[[noreturn]] void budget(const std::string& what) {
  raise(ErrorKind::Budget, "search budget exceeded: " + what);
}

const LassoFilter kNullFilter{};

}  // namespace

StateGraph StateGraph::of(const Game& g) {
  StateGraph gr;
  gr.succ.resize(g.states.size());
  for (int s = 0; s < g.state_count(); ++s) {
    std::set<int> t(g.tr[static_cast<std::size_t>(s)].begin(),
                    g.tr[static_cast<std::size_t>(s)].end());
    auto& out = gr.succ[static_cast<std::size_t>(s)];
    out.assign(t.begin(), t.end());
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      return g.state_rank[static_cast<std::size_t>(a)] < g.state_rank[static_cast<std::size_t>(b)];
    });
  }
  return gr;
}

bool StateGraph::has_edge(int s, int t) const {
  const auto& out = succ[static_cast<std::size_t>(s)];
  return std::find(out.begin(), out.end(), t) != out.end();
}

namespace {

// Tarjan over an adjacency list restricted to `allowed`; components in
// completion order. With a root only its reachable part is covered.
struct TarjanRun {
  const std::vector<std::vector<int>>& succ;
  std::uint64_t allowed;
  std::vector<int> index, low;
  std::vector<char> onstack;
  std::vector<int> stack;
  int counter = 0;
  std::vector<std::uint64_t> sccs;

  TarjanRun(const std::vector<std::vector<int>>& s, std::uint64_t a)
      : succ(s), allowed(a), index(s.size(), -1), low(s.size(), 0), onstack(s.size(), 0) {}

  void visit(int v) {
    index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
    stack.push_back(v);
    onstack[static_cast<std::size_t>(v)] = 1;
    for (int w : succ[static_cast<std::size_t>(v)]) {
      if (!((allowed >> w) & 1)) continue;
      if (index[static_cast<std::size_t>(w)] < 0) {
        visit(w);
        low[static_cast<std::size_t>(v)] =
            std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
      } else if (onstack[static_cast<std::size_t>(w)]) {
        low[static_cast<std::size_t>(v)] =
            std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
      }
    }
    if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
      std::uint64_t m = 0;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        onstack[static_cast<std::size_t>(w)] = 0;
        m |= 1ull << w;
      } while (w != v);
      sccs.push_back(m);
    }
  }
};

std::vector<std::uint64_t> tarjan_over(const std::vector<std::vector<int>>& succ,
                                       std::uint64_t allowed,
                                       std::optional<int> root) {
  TarjanRun t(succ, allowed);
  if (root) {
    if ((allowed >> *root) & 1) t.visit(*root);
  } else {
    for (std::size_t v = 0; v < succ.size(); ++v)
      if (((allowed >> v) & 1) && t.index[v] < 0) t.visit(static_cast<int>(v));
  }
  return t.sccs;
}

bool induced_sc(const std::vector<std::vector<int>>& succ, std::uint64_t mask) {
  if (mask == 0) return false;
  int s0 = std::countr_zero(mask);
  if (std::popcount(mask) == 1) {
    const auto& out = succ[static_cast<std::size_t>(s0)];
    return std::find(out.begin(), out.end(), s0) != out.end();
  }
  auto span = [&](bool forward) {
    std::uint64_t seen = 1ull << s0;
    std::vector<int> q{s0};
    while (!q.empty()) {
      int v = q.back();
      q.pop_back();
      if (forward) {
        for (int w : succ[static_cast<std::size_t>(v)])
          if (((mask >> w) & 1) && !((seen >> w) & 1)) {
            seen |= 1ull << w;
            q.push_back(w);
          }
      } else {
        for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
          int u = std::countr_zero(rest);
          if ((seen >> u) & 1) continue;
          const auto& out = succ[static_cast<std::size_t>(u)];
          if (std::find(out.begin(), out.end(), v) != out.end()) {
            seen |= 1ull << u;
            q.push_back(u);
          }
        }
      }
    }
    return seen == mask;
  };
  return span(true) && span(false);
}

}  // namespace

std::vector<std::uint64_t> tarjan_sccs(const StateGraph& gr, int source,
                                       std::uint64_t allowed) {
  return tarjan_over(gr.succ, allowed, source);
}

std::vector<std::uint64_t> tarjan_sccs(const Game& g, int source) {
  StateGraph gr = StateGraph::of(g);
  std::uint64_t all = g.state_count() == 64 ? ~0ull : (1ull << g.state_count()) - 1;
  return tarjan_sccs(gr, source, all);
}

bool induced_strongly_connected(const StateGraph& gr, std::uint64_t mask) {
  return induced_sc(gr.succ, mask);
}

SearchBounds default_bounds(const Game& g) {
  std::size_t n = static_cast<std::size_t>(g.state_count());
  return {n * n, n * n};
}

// ========================================================== profile searches

namespace {

// Agent-touch mask per state from the per-agent objective state sets.
std::vector<std::uint32_t> agent_touches(const Game& g) {
  std::vector<std::uint32_t> t(g.states.size(), 0);
  for (int i = 0; i < g.n_agents; ++i) {
    std::uint64_t set = g.objectives[static_cast<std::size_t>(i)].set;
    for (std::uint64_t m = set; m; m &= m - 1)
      t[static_cast<std::size_t>(std::countr_zero(m))] |= 1u << i;
  }
  return t;
}

inline std::uint64_t nkey(int s, std::uint32_t m) {
  return (static_cast<std::uint64_t>(s) << 32) | m;
}

// BFS store over (state, mask) nodes with parent links.
struct ClassBfs {
  std::vector<std::uint64_t> keys;
  std::vector<int> dist, parent;
  std::unordered_map<std::uint64_t, int> id;
  SearchStats& st;

  explicit ClassBfs(SearchStats& s) : st(s) {}

  int state_of(int node) const { return static_cast<int>(keys[static_cast<std::size_t>(node)] >> 32); }
  std::uint32_t mask_of(int node) const {
    return static_cast<std::uint32_t>(keys[static_cast<std::size_t>(node)]);
  }
  // Returns the node id if newly inserted, -1 if already present.
  int push(int s, std::uint32_t m, int d, int par) {
    auto [it, fresh] = id.try_emplace(nkey(s, m), static_cast<int>(keys.size()));
    if (!fresh) return -1;
    keys.push_back(nkey(s, m));
    dist.push_back(d);
    parent.push_back(par);
    if (++st.nodes > kNodeCap) budget("class graph too large");
    return it->second;
  }
  int find(int s, std::uint32_t m) const {
    auto it = id.find(nkey(s, m));
    return it == id.end() ? -1 : it->second;
  }
  // States along the parent chain, source first, node last.
  std::vector<int> chain(int node) const {
    std::vector<int> out;
    for (int v = node; v >= 0; v = parent[static_cast<std::size_t>(v)])
      out.push_back(state_of(v));
    std::reverse(out.begin(), out.end());
    return out;
  }
};

struct EngineIn {
  const Game& g;
  const StateGraph& gr;
  int source;
  SearchBounds b;
  const LassoFilter& f;
  SearchStats& st;
  std::uint32_t profile;
  std::uint32_t full;
};

// Shortest path from -> to inside `mask` over `succ`; endpoints included.
// With nonempty=true and from==to a genuine cycle is produced. Empty result
// means unreachable.
std::vector<int> path_in(const std::vector<std::vector<int>>& succ, std::uint64_t mask,
                         int from, int to, bool nonempty) {
  if (from == to && !nonempty) return {from};
  std::vector<int> par(succ.size(), -2);
  std::queue<int> q;
  auto relax = [&](int t, int p) {
    if (!((mask >> t) & 1) || par[static_cast<std::size_t>(t)] != -2) return false;
    par[static_cast<std::size_t>(t)] = p;
    q.push(t);
    return t == to;
  };
  bool found = false;
  for (int t : succ[static_cast<std::size_t>(from)])
    if (relax(t, -1)) found = true;
  while (!found && !q.empty()) {
    int v = q.front();
    q.pop();
    for (int t : succ[static_cast<std::size_t>(v)])
      if (relax(t, v)) {
        found = true;
        break;
      }
  }
  if (!found) return {};
  std::vector<int> out{to};
  for (int v = par[static_cast<std::size_t>(to)]; v != -1; v = par[static_cast<std::size_t>(v)])
    out.push_back(v);
  out.push_back(from);
  std::reverse(out.begin(), out.end());
  return out;
}

// Closed covering walk from c0 inside `mask`: repeatedly walks to the nearest
// state satisfying an uncovered need, then closes the loop. Returns the cycle
// as a state list starting at c0 (the wrap edge back to c0 is implicit).
// `needs` maps a state to the need-indices it covers.
std::vector<int> greedy_cycle(const std::vector<std::vector<int>>& succ, std::uint64_t mask,
                              int c0, std::uint32_t need_count,
                              const std::function<std::uint32_t(int)>& needs) {
  std::vector<int> cyc{c0};
  std::uint32_t cov = needs(c0);
  std::uint32_t all = need_count == 32 ? ~0u : (1u << need_count) - 1;
  int cur = c0;
  while ((all & ~cov) != 0) {
    // Nearest state covering something new (BFS; first hit is deterministic).
    std::vector<int> par(succ.size(), -2);
    std::queue<int> q;
    par[static_cast<std::size_t>(cur)] = -1;
    q.push(cur);
    int hit = -1;
    while (!q.empty() && hit < 0) {
      int v = q.front();
      q.pop();
      for (int t : succ[static_cast<std::size_t>(v)]) {
        if (!((mask >> t) & 1) || par[static_cast<std::size_t>(t)] != -2) continue;
        par[static_cast<std::size_t>(t)] = v;
        if ((needs(t) & ~cov) != 0) {
          hit = t;
          break;
        }
        q.push(t);
      }
    }
    if (hit < 0) raise(ErrorKind::Internal, "covering walk lost a reachable need");
    std::vector<int> leg{hit};
    for (int v = par[static_cast<std::size_t>(hit)]; v != -1; v = par[static_cast<std::size_t>(v)])
      leg.push_back(v);
    std::reverse(leg.begin(), leg.end());
    for (std::size_t i = 1; i < leg.size(); ++i) {
      cyc.push_back(leg[i]);
      cov |= needs(leg[i]);
    }
    cur = hit;
  }
  std::vector<int> back = path_in(succ, mask, cur, c0, true);
  if (back.empty()) raise(ErrorKind::Internal, "covering walk cannot close");
  for (std::size_t i = 1; i + 1 < back.size(); ++i) cyc.push_back(back[i]);
  return cyc;
}

// Exact shortest covering cycle: BFS over (state, covered-needs) from c0 back
// to (c0, all), inside `mask`. Returns the cycle states or empty if none
// within `limit` steps.
std::vector<int> exact_cycle(const std::vector<std::vector<int>>& succ, std::uint64_t mask,
                             int c0, std::uint32_t need_count,
                             const std::function<std::uint32_t(int)>& needs,
                             std::size_t limit, SearchStats& st) {
  std::uint32_t all = need_count == 32 ? ~0u : (1u << need_count) - 1;
  ClassBfs bfs(st);
  bfs.push(c0, needs(c0), 0, -1);
  int goal = -1;
  for (std::size_t qi = 0; qi < bfs.keys.size() && goal < 0; ++qi) {
    int d = bfs.dist[qi];
    if (static_cast<std::size_t>(d) >= limit) continue;
    int s = bfs.state_of(static_cast<int>(qi));
    std::uint32_t cov = bfs.mask_of(static_cast<int>(qi));
    for (int t : succ[static_cast<std::size_t>(s)]) {
      if (!((mask >> t) & 1)) continue;
      std::uint32_t cov2 = cov | needs(t);
      if (t == c0 && cov2 == all) {
        // Rebuild: chain to (s,cov) then the closing step to c0.
        std::vector<int> walk = bfs.chain(static_cast<int>(qi));
        return walk;  // starts at c0; closing edge back to c0 is the wrap
      }
      bfs.push(t, cov2, d + 1, static_cast<int>(qi));
    }
  }
  return {};
}

std::optional<Lasso> make_witness(const Game& g, std::vector<int> stem_states,
                                  std::vector<int> cycle) {
  // stem_states includes the cycle entry as its last element; drop it.
  stem_states.pop_back();
  Lasso l{std::move(stem_states), std::move(cycle)};
  return canonical_lasso(g, l);
}

// ------------------------------------------------------------- reach profile

std::optional<Lasso> reach_engine(const EngineIn& e) {
  auto touch = agent_touches(e.g);
  std::uint32_t Wn = e.profile, L = e.full & ~e.profile;
  const int ns = e.g.state_count();
  auto valid = [&](int s) {
    return (touch[static_cast<std::size_t>(s)] & L) == 0 && e.f.state_ok(s, 0);
  };
  if (!valid(e.source)) return std::nullopt;
  if (std::popcount(Wn) > 22) budget("winner set too large for touch-class search");

  std::vector<std::vector<int>> fsucc(static_cast<std::size_t>(ns));
  std::uint64_t allowed = 0;
  for (int s = 0; s < ns; ++s) {
    if (!valid(s)) continue;
    allowed |= 1ull << s;
    for (int t : e.gr.succ[static_cast<std::size_t>(s)])
      if (valid(t) && e.f.edge_ok(s, 0, t)) fsucc[static_cast<std::size_t>(s)].push_back(t);
  }

  ClassBfs bfs(e.st);
  bfs.push(e.source, touch[static_cast<std::size_t>(e.source)] & Wn, 0, -1);
  for (std::size_t qi = 0; qi < bfs.keys.size(); ++qi) {
    if (static_cast<std::size_t>(bfs.dist[qi]) >= e.b.stem) continue;
    int s = bfs.state_of(static_cast<int>(qi));
    std::uint32_t M = bfs.mask_of(static_cast<int>(qi));
    for (int t : fsucc[static_cast<std::size_t>(s)])
      bfs.push(t, M | (touch[static_cast<std::size_t>(t)] & Wn), bfs.dist[qi] + 1,
               static_cast<int>(qi));
  }

  auto sccs = tarjan_over(fsucc, allowed, std::nullopt);
  std::vector<int> scc_of(static_cast<std::size_t>(ns), -1);
  std::vector<std::uint32_t> scc_touch(sccs.size(), 0);
  std::vector<char> scc_cyclic(sccs.size(), 0);
  for (std::size_t k = 0; k < sccs.size(); ++k) {
    for (std::uint64_t m = sccs[k]; m; m &= m - 1) {
      int s = std::countr_zero(m);
      scc_of[static_cast<std::size_t>(s)] = static_cast<int>(k);
      scc_touch[k] |= touch[static_cast<std::size_t>(s)] & Wn;
    }
    if (std::popcount(sccs[k]) > 1) scc_cyclic[k] = 1;
    else {
      int s = std::countr_zero(sccs[k]);
      const auto& out = fsucc[static_cast<std::size_t>(s)];
      scc_cyclic[k] = std::find(out.begin(), out.end(), s) != out.end();
    }
  }

  for (std::size_t qi = 0; qi < bfs.keys.size(); ++qi) {
    int c0 = bfs.state_of(static_cast<int>(qi));
    std::uint32_t M = bfs.mask_of(static_cast<int>(qi));
    int k = scc_of[static_cast<std::size_t>(c0)];
    if (k < 0 || !scc_cyclic[static_cast<std::size_t>(k)]) continue;
    std::uint32_t needed = Wn & ~M;
    if ((needed & ~scc_touch[static_cast<std::size_t>(k)]) != 0) continue;
    std::uint64_t S = sccs[static_cast<std::size_t>(k)];
    std::size_t sz = static_cast<std::size_t>(std::popcount(S));

    // Compact need indices = the needed agents.
    std::vector<int> need_agents;
    for (std::uint32_t m = needed; m; m &= m - 1) need_agents.push_back(std::countr_zero(m));
    auto needs = [&](int s) {
      std::uint32_t out = 0;
      for (std::size_t a = 0; a < need_agents.size(); ++a)
        if ((touch[static_cast<std::size_t>(s)] >> need_agents[a]) & 1) out |= 1u << a;
      return out;
    };
    std::vector<int> cyc;
    if (e.b.cycle >= sz * sz) {
      cyc = greedy_cycle(fsucc, S, c0, static_cast<std::uint32_t>(need_agents.size()), needs);
    } else {
      cyc = exact_cycle(fsucc, S, c0, static_cast<std::uint32_t>(need_agents.size()), needs,
                        e.b.cycle, e.st);
      if (cyc.empty()) continue;
    }
    return make_witness(e.g, bfs.chain(static_cast<int>(qi)), std::move(cyc));
  }
  return std::nullopt;
}

// -------------------------------------------------------------- safe profile

std::optional<Lasso> safe_engine(const EngineIn& e) {
  auto ut = agent_touches(e.g);
  std::uint32_t Wn = e.profile, L = e.full & ~e.profile;
  const int ns = e.g.state_count();
  if (std::popcount(L) > 22) budget("loser set too large for touch-class search");
  auto static_ok = [&](int s) { return (ut[static_cast<std::size_t>(s)] & Wn) == 0; };
  std::uint32_t B0 = ut[static_cast<std::size_t>(e.source)] & L;
  if (!static_ok(e.source) || !e.f.state_ok(e.source, B0)) return std::nullopt;

  // Stem classes (state, touched losers).
  ClassBfs stem(e.st);
  stem.push(e.source, B0, 0, -1);
  for (std::size_t qi = 0; qi < stem.keys.size(); ++qi) {
    if (static_cast<std::size_t>(stem.dist[qi]) >= e.b.stem) continue;
    int s = stem.state_of(static_cast<int>(qi));
    std::uint32_t M = stem.mask_of(static_cast<int>(qi));
    for (int t : e.gr.succ[static_cast<std::size_t>(s)]) {
      if (!static_ok(t)) continue;
      std::uint32_t M2 = M | (ut[static_cast<std::size_t>(t)] & L);
      if (e.f.edge_ok(s, M, t) && e.f.state_ok(t, M2))
        stem.push(t, M2, stem.dist[qi] + 1, static_cast<int>(qi));
    }
  }

  // Cycle node space (state, B): every step must also be walkable at B = L
  // (the bookkeeping value of every later pass).
  ClassBfs cyc(e.st);
  for (int s = 0; s < ns; ++s) {
    if (!static_ok(s)) continue;
    for (std::uint32_t B = 0;; B = ((B | ~L) + 1) & L) {  // all B subset of L
      if (e.f.state_ok(s, B)) cyc.push(s, B, 0, -1);
      if (B == L) break;
    }
  }
  // Forward adjacency between cycle nodes; edges checked at B and at L.
  std::vector<std::vector<int>> fwd(cyc.keys.size());
  for (std::size_t v = 0; v < cyc.keys.size(); ++v) {
    int s = cyc.state_of(static_cast<int>(v));
    std::uint32_t B = cyc.mask_of(static_cast<int>(v));
    for (int t : e.gr.succ[static_cast<std::size_t>(s)]) {
      if (!static_ok(t)) continue;
      std::uint32_t B2 = B | (ut[static_cast<std::size_t>(t)] & L);
      int w = cyc.find(t, B2);
      if (w < 0) continue;
      if (e.f.edge_ok(s, B, t) && e.f.edge_ok(s, L, t) && e.f.state_ok(t, L))
        fwd[v].push_back(w);
    }
  }
  std::vector<std::vector<int>> rev(cyc.keys.size());
  for (std::size_t v = 0; v < fwd.size(); ++v)
    for (int w : fwd[v]) rev[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));

  // bd[v] = shortest path length from node v to the goal (c0, L); -1 if
  // unreachable. Computed lazily per c0 via backward BFS.
  std::vector<std::vector<int>> bdist_of(static_cast<std::size_t>(ns));
  std::vector<char> bdist_done(static_cast<std::size_t>(ns), 0);
  auto bdist = [&](int c0) -> const std::vector<int>& {
    auto& d = bdist_of[static_cast<std::size_t>(c0)];
    if (bdist_done[static_cast<std::size_t>(c0)]) return d;
    bdist_done[static_cast<std::size_t>(c0)] = 1;
    d.assign(cyc.keys.size(), -1);
    int goal = cyc.find(c0, L);
    if (goal < 0) return d;
    d[static_cast<std::size_t>(goal)] = 0;
    std::queue<int> q;
    q.push(goal);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : rev[static_cast<std::size_t>(v)]) {
        if (d[static_cast<std::size_t>(w)] >= 0) continue;
        d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
        q.push(w);
      }
    }
    return d;
  };
  // Shortest node path from -> to over fwd (from != to), endpoints included.
  auto node_path = [&](int from, int to) {
    std::vector<int> par(cyc.keys.size(), -2);
    par[static_cast<std::size_t>(from)] = -1;
    std::queue<int> q;
    q.push(from);
    bool found = from == to;
    while (!q.empty() && !found) {
      int v = q.front();
      q.pop();
      for (int w : fwd[static_cast<std::size_t>(v)]) {
        if (par[static_cast<std::size_t>(w)] != -2) continue;
        par[static_cast<std::size_t>(w)] = v;
        if (w == to) {
          found = true;
          break;
        }
        q.push(w);
      }
    }
    std::vector<int> out;
    if (!found) return out;
    for (int v = to; v != -1; v = par[static_cast<std::size_t>(v)]) out.push_back(v);
    std::reverse(out.begin(), out.end());
    return out;
  };

  for (std::size_t qi = 0; qi < stem.keys.size(); ++qi) {
    int c0 = stem.state_of(static_cast<int>(qi));
    std::uint32_t M = stem.mask_of(static_cast<int>(qi));
    const auto& d = bdist(c0);
    int node = cyc.find(c0, M);
    int goal = cyc.find(c0, L);
    if (node < 0 || goal < 0) continue;
    std::vector<int> cycle_states;
    if (node != goal) {
      int need = d[static_cast<std::size_t>(node)];
      if (need < 0 || static_cast<std::size_t>(need) > e.b.cycle) continue;
      auto np = node_path(node, goal);
      for (std::size_t i = 0; i + 1 < np.size(); ++i)
        cycle_states.push_back(cyc.state_of(np[i]));
    } else {
      // Already at full bookkeeping: need a genuine cycle goal -> ... -> goal.
      int best = -1, bw = -1;
      for (int w : fwd[static_cast<std::size_t>(node)]) {
        int dw = d[static_cast<std::size_t>(w)];
        if (dw >= 0 && (best < 0 || dw + 1 < best)) best = dw + 1, bw = w;
      }
      if (best < 0 || static_cast<std::size_t>(best) > e.b.cycle) continue;
      cycle_states.push_back(cyc.state_of(node));
      if (bw != goal) {
        auto np = node_path(bw, goal);
        for (std::size_t i = 0; i + 1 < np.size(); ++i)
          cycle_states.push_back(cyc.state_of(np[i]));
      }
    }
    return make_witness(e.g, stem.chain(static_cast<int>(qi)), std::move(cycle_states));
  }
  return std::nullopt;
}

// ----------------------------------------- buchi / cobuchi (inf-set) profile

std::optional<Lasso> inf_engine(const EngineIn& e, bool buchi) {
  const int ns = e.g.state_count();
  std::uint32_t cover_agents = buchi ? e.profile : (e.full & ~e.profile);
  std::uint32_t avoid_agents = buchi ? (e.full & ~e.profile) : e.profile;
  std::uint64_t avoid = 0;
  for (std::uint32_t m = avoid_agents; m; m &= m - 1)
    avoid |= e.g.objectives[static_cast<std::size_t>(std::countr_zero(m))].set;
  std::vector<std::uint64_t> need_sets;
  for (std::uint32_t m = cover_agents; m; m &= m - 1)
    need_sets.push_back(e.g.objectives[static_cast<std::size_t>(std::countr_zero(m))].set);

  auto valid = [&](int s) { return e.f.state_ok(s, 0); };
  if (!valid(e.source)) return std::nullopt;
  std::vector<std::vector<int>> fsucc(static_cast<std::size_t>(ns));
  std::uint64_t allowed = 0;
  for (int s = 0; s < ns; ++s) {
    if (!valid(s)) continue;
    allowed |= 1ull << s;
    for (int t : e.gr.succ[static_cast<std::size_t>(s)])
      if (valid(t) && e.f.edge_ok(s, 0, t)) fsucc[static_cast<std::size_t>(s)].push_back(t);
  }
  // Plain stem BFS.
  ClassBfs bfs(e.st);
  bfs.push(e.source, 0, 0, -1);
  for (std::size_t qi = 0; qi < bfs.keys.size(); ++qi) {
    if (static_cast<std::size_t>(bfs.dist[qi]) >= e.b.stem) continue;
    int s = bfs.state_of(static_cast<int>(qi));
    for (int t : fsucc[static_cast<std::size_t>(s)])
      bfs.push(t, 0, bfs.dist[qi] + 1, static_cast<int>(qi));
  }
  std::uint64_t cyc_allowed = allowed & ~avoid;
  std::vector<std::vector<int>> csucc(static_cast<std::size_t>(ns));
  for (int s = 0; s < ns; ++s) {
    if (!((cyc_allowed >> s) & 1)) continue;
    for (int t : fsucc[static_cast<std::size_t>(s)])
      if ((cyc_allowed >> t) & 1) csucc[static_cast<std::size_t>(s)].push_back(t);
  }
  auto sccs = tarjan_over(csucc, cyc_allowed, std::nullopt);
  std::vector<int> scc_of(static_cast<std::size_t>(ns), -1);
  std::vector<char> scc_ok(sccs.size(), 0);
  for (std::size_t k = 0; k < sccs.size(); ++k) {
    for (std::uint64_t m = sccs[k]; m; m &= m - 1)
      scc_of[static_cast<std::size_t>(std::countr_zero(m))] = static_cast<int>(k);
    bool cyclic = std::popcount(sccs[k]) > 1;
    if (!cyclic) {
      int s = std::countr_zero(sccs[k]);
      const auto& out = csucc[static_cast<std::size_t>(s)];
      cyclic = std::find(out.begin(), out.end(), s) != out.end();
    }
    bool covered = cyclic;
    for (const auto& set : need_sets)
      covered = covered && (set & sccs[k]) != 0;
    scc_ok[k] = covered;
  }
  for (std::size_t qi = 0; qi < bfs.keys.size(); ++qi) {
    int c0 = bfs.state_of(static_cast<int>(qi));
    int k = scc_of[static_cast<std::size_t>(c0)];
    if (k < 0 || !scc_ok[static_cast<std::size_t>(k)]) continue;
    std::uint64_t S = sccs[static_cast<std::size_t>(k)];
    std::size_t sz = static_cast<std::size_t>(std::popcount(S));
    auto needs = [&](int s) {
      std::uint32_t out = 0;
      for (std::size_t a = 0; a < need_sets.size(); ++a)
        if ((need_sets[a] >> s) & 1) out |= 1u << a;
      return out;
    };
    std::vector<int> cyc;
    if (e.b.cycle >= sz * sz) {
      cyc = greedy_cycle(csucc, S, c0, static_cast<std::uint32_t>(need_sets.size()), needs);
    } else {
      cyc = exact_cycle(csucc, S, c0, static_cast<std::uint32_t>(need_sets.size()), needs,
                        e.b.cycle, e.st);
      if (cyc.empty()) continue;
    }
    return make_witness(e.g, bfs.chain(static_cast<int>(qi)), std::move(cyc));
  }
  return std::nullopt;
}

// ------------------------------------------- parity / muller (exact inf set)

std::optional<Lasso> exact_engine(const EngineIn& e) {
  const int ns = e.g.state_count();
  if (ns > 12) budget("game too large for exact cycle-set enumeration");
  auto valid = [&](int s) { return e.f.state_ok(s, 0); };
  if (!valid(e.source)) return std::nullopt;
  std::vector<std::vector<int>> fsucc(static_cast<std::size_t>(ns));
  std::uint64_t vmask = 0;
  for (int s = 0; s < ns; ++s) {
    if (!valid(s)) continue;
    vmask |= 1ull << s;
    for (int t : e.gr.succ[static_cast<std::size_t>(s)])
      if (valid(t) && e.f.edge_ok(s, 0, t)) fsucc[static_cast<std::size_t>(s)].push_back(t);
  }
  ClassBfs bfs(e.st);
  bfs.push(e.source, 0, 0, -1);
  for (std::size_t qi = 0; qi < bfs.keys.size(); ++qi) {
    if (static_cast<std::size_t>(bfs.dist[qi]) >= e.b.stem) continue;
    int s = bfs.state_of(static_cast<int>(qi));
    for (int t : fsucc[static_cast<std::size_t>(s)])
      bfs.push(t, 0, bfs.dist[qi] + 1, static_cast<int>(qi));
  }
  std::uint64_t top = 1ull << ns;
  for (std::uint64_t C = 1; C < top; ++C) {
    if ((C & ~vmask) != 0) continue;
    if (++e.st.subsets > kSubsetCap) budget("cycle-set enumeration too large");
    bool match = true;
    for (int i = 0; i < e.g.n_agents && match; ++i) {
      bool win = eval_objective(e.g.objectives[static_cast<std::size_t>(i)], C, C);
      match = win == (((e.profile >> i) & 1) != 0);
    }
    if (!match || !induced_sc(fsucc, C)) continue;
    // Cycle entry: min stem distance, ties by state name.
    int c0 = -1, c0d = -1;
    for (std::uint64_t m = C; m; m &= m - 1) {
      int s = std::countr_zero(m);
      int node = bfs.find(s, 0);
      if (node < 0) continue;
      int d = bfs.dist[static_cast<std::size_t>(node)];
      if (static_cast<std::size_t>(d) > e.b.stem) continue;
      if (c0 < 0 || d < c0d ||
          (d == c0d && e.g.state_rank[static_cast<std::size_t>(s)] <
                           e.g.state_rank[static_cast<std::size_t>(c0)]))
        c0 = s, c0d = d;
    }
    if (c0 < 0) continue;
    // The cycle must visit every state of C (they are exactly the states
    // occurring infinitely often).
    std::vector<int> cs;
    for (std::uint64_t m = C; m; m &= m - 1) cs.push_back(std::countr_zero(m));
    auto needs = [&](int s) {
      std::uint32_t out = 0;
      for (std::size_t a = 0; a < cs.size(); ++a)
        if (cs[a] == s) out |= 1u << a;
      return out;
    };
    std::size_t sz = cs.size();
    std::vector<int> cyc;
    if (e.b.cycle >= sz * sz) {
      cyc = greedy_cycle(fsucc, C, c0, static_cast<std::uint32_t>(sz), needs);
    } else {
      cyc = exact_cycle(fsucc, C, c0, static_cast<std::uint32_t>(sz), needs, e.b.cycle, e.st);
      if (cyc.empty()) continue;
    }
    int node = bfs.find(c0, 0);
    return make_witness(e.g, bfs.chain(node), std::move(cyc));
  }
  return std::nullopt;
}

}  // namespace

std::optional<Lasso> find_profile_lasso(const Game& g, int source, std::uint32_t profile,
                                        const SearchBounds& b, const LassoFilter* filter,
                                        SearchStats* stats) {
  if (source < 0 || source >= g.state_count())
    raise(ErrorKind::Usage, "source state out of range");
  if (b.cycle < 1) raise(ErrorKind::Usage, "cycle bound must be at least 1");
  std::uint32_t full =
      g.n_agents == 32 ? ~0u : (1u << g.n_agents) - 1;
  if ((profile & ~full) != 0) raise(ErrorKind::Usage, "profile has more agents than the game");
  ObjectiveKind kind = require_uniform_class(g);
  StateGraph gr = StateGraph::of(g);
  SearchStats local;
  EngineIn e{g, gr, source, b, filter ? *filter : kNullFilter,
             stats ? *stats : local, profile, full};
  switch (kind) {
    case ObjectiveKind::Reach: return reach_engine(e);
    case ObjectiveKind::Safe: return safe_engine(e);
    case ObjectiveKind::Buchi: return inf_engine(e, true);
    case ObjectiveKind::CoBuchi: return inf_engine(e, false);
    case ObjectiveKind::Parity:
    case ObjectiveKind::Muller: return exact_engine(e);
  }
  raise(ErrorKind::Internal, "unknown objective kind");
}

std::vector<std::uint32_t> achievable_profiles(const Game& g, int source,
                                               const SearchBounds& b,
                                               SearchStats* stats) {
  require_uniform_class(g);
  if (g.n_agents > 20) budget("too many agents for profile enumeration");
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  std::uint32_t full = (1u << g.n_agents) - 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 0;; ++p) {
    if (find_profile_lasso(g, source, p, b, nullptr, &st)) out.push_back(p);
    if (p == full) break;
  }
  return out;
}

std::vector<std::uint32_t> pareto_front(const std::vector<std::uint32_t>& profiles) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p : profiles) {
    bool dominated = false;
    for (std::uint32_t q : profiles)
      if (q != p && profile_geq(q, p)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void enumerate_lassos(const Game& g, int source, const SearchBounds& b,
                      const std::function<void(const Lasso&)>& f) {
  if (source < 0 || source >= g.state_count())
    raise(ErrorKind::Usage, "source state out of range");
  if (b.cycle < 1) raise(ErrorKind::Usage, "cycle bound must be at least 1");
  StateGraph gr = StateGraph::of(g);
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  std::vector<Lasso> out;
  std::vector<int> path{source};
  std::uint64_t steps = 0;
  auto rec = [&](auto&& self) -> void {
    if (++steps > kEnumCap) budget("lasso enumeration too large");
    std::size_t len = path.size();
    std::size_t lo = len > b.cycle ? len - b.cycle : 0;
    for (std::size_t i = lo; i < len; ++i) {
      if (i > b.stem) break;
      if (!gr.has_edge(path.back(), path[i])) continue;
      Lasso l{{path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i)},
              {path.begin() + static_cast<std::ptrdiff_t>(i), path.end()}};
      l = canonical_lasso(g, l);
      if (seen.insert({l.stem, l.cycle}).second) out.push_back(l);
    }
    if (len < b.stem + b.cycle) {
      for (int t : gr.succ[static_cast<std::size_t>(path.back())]) {
        path.push_back(t);
        self(self);
        path.pop_back();
      }
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end(),
            [&](const Lasso& a, const Lasso& c) { return lasso_less(g, a, c); });
  for (const auto& l : out) f(l);
}

}  // namespace releq
