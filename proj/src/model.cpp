#include "releq/model.hpp"

#include <algorithm>
#include <numeric>

namespace releq {

const char* objective_kind_name(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::Reach: return "reach";
    case ObjectiveKind::Safe: return "safe";
    case ObjectiveKind::Buchi: return "buchi";
    case ObjectiveKind::CoBuchi: return "cobuchi";
    case ObjectiveKind::Parity: return "parity";
    case ObjectiveKind::Muller: return "muller";
  }
  return "?";
}

int Game::state_id(const std::string& name) const {
  for (int s = 0; s < state_count(); ++s)
    if (states[s] == name) return s;
  return -1;
}

std::vector<int> Game::decode_move(int s, std::size_t rank) const {
  std::vector<int> out(n_agents);
  for (int i = n_agents - 1; i >= 0; --i) {
    const auto& av = avail[s][i];
    out[i] = av[rank % av.size()];
    rank /= av.size();
  }
  if (rank != 0) raise(ErrorKind::Internal, "move rank out of range");
  return out;
}

std::size_t Game::encode_move(int s, const std::vector<int>& action_ids) const {
  std::size_t rank = 0;
  for (int i = 0; i < n_agents; ++i) {
    const auto& av = avail[s][i];
    auto it = std::find(av.begin(), av.end(), action_ids[i]);
    if (it == av.end())
      raise(ErrorKind::Validation, "action not available to agent " +
                                       std::to_string(i + 1) + " at state " + states[s]);
    rank = rank * av.size() + static_cast<std::size_t>(it - av.begin());
  }
  return rank;
}

void Game::finalize_derived() {
  const int m = state_count();
  state_rank.assign(m, 0);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return states[a] < states[b]; });
  for (int r = 0; r < m; ++r) state_rank[order[r]] = r;

  owner.assign(m, -1);
  turn_based = true;
  for (int s = 0; s < m; ++s) {
    for (int i = 0; i < n_agents; ++i) {
      if (avail[s][i].size() > 1) {
        if (owner[s] != -1) turn_based = false;
        else owner[s] = i;
      }
    }
  }
}

std::optional<ObjectiveKind> uniform_class(const Game& g) {
  if (g.objectives.empty()) return std::nullopt;
  ObjectiveKind k = g.objectives[0].kind;
  for (const auto& o : g.objectives)
    if (o.kind != k) return std::nullopt;
  return k;
}

ObjectiveKind require_uniform_class(const Game& g) {
  auto k = uniform_class(g);
  if (!k)
    raise(ErrorKind::Validation,
          "objectives mix payoff classes; this operation requires all agents to "
          "share one objective kind");
  return *k;
}

std::string WinnerProfile::to_string() const {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (wins(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

WinnerProfile WinnerProfile::from_string(const std::string& s) {
  if (s.empty() || s.size() > static_cast<std::size_t>(kMaxAgents))
    raise(ErrorKind::Usage, "winner profile must have between 1 and " +
                                std::to_string(kMaxAgents) + " characters");
  WinnerProfile p;
  p.n = static_cast<int>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') p.bits |= 1u << i;
    else if (s[i] != '0')
      raise(ErrorKind::Usage, "winner profile must consist of 0/1 characters");
  }
  return p;
}

bool eval_objective(const Objective& o, std::uint64_t occ, std::uint64_t inf) {
  if (inf == 0 || (inf & ~occ) != 0)
    raise(ErrorKind::Validation,
          "objective evaluation requires a nonempty infinite-visit set contained "
          "in the visited set");
  switch (o.kind) {
    case ObjectiveKind::Reach: return (occ & o.set) != 0;
    case ObjectiveKind::Safe: return (occ & o.set) == 0;
    case ObjectiveKind::Buchi: return (inf & o.set) != 0;
    case ObjectiveKind::CoBuchi: return (inf & o.set) == 0;
    case ObjectiveKind::Parity: {
      int best = -1;
      for (std::uint64_t m = inf; m != 0; m &= m - 1) {
        int s = std::countr_zero(m);
        int p = o.priority[static_cast<std::size_t>(s)];
        if (best < 0 || p < best) best = p;
      }
      return best % 2 == 0;
    }
    case ObjectiveKind::Muller: {
      std::uint64_t seen = 0;
      for (std::uint64_t m = inf; m != 0; m &= m - 1)
        seen |= 1ull << o.colour[static_cast<std::size_t>(std::countr_zero(m))];
      return std::find(o.family.begin(), o.family.end(), seen) != o.family.end();
    }
  }
  raise(ErrorKind::Internal, "unknown objective kind");
}

std::uint64_t states_mask(const std::vector<int>& seq) {
  std::uint64_t m = 0;
  for (int s : seq) m |= 1ull << s;
  return m;
}

namespace {

// True iff some legal move leads from `from` to `to`.
bool has_edge(const Game& g, int from, int to) {
  const auto& row = g.tr[static_cast<std::size_t>(from)];
  return std::find(row.begin(), row.end(), to) != row.end();
}

}  // namespace

bool lasso_is_play(const Game& g, const Lasso& l, int source) {
  if (l.cycle.empty()) return false;
  int first = l.stem.empty() ? l.cycle.front() : l.stem.front();
  if (first != source) return false;
  std::vector<int> seq = l.stem;
  seq.insert(seq.end(), l.cycle.begin(), l.cycle.end());
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!has_edge(g, seq[i], seq[i + 1])) return false;
  return has_edge(g, l.cycle.back(), l.cycle.front());
}

WinnerProfile payoff_of_lasso(const Game& g, const Lasso& l) {
  std::uint64_t inf = states_mask(l.cycle);
  std::uint64_t occ = inf | states_mask(l.stem);
  WinnerProfile p;
  p.n = g.n_agents;
  for (int i = 0; i < g.n_agents; ++i)
    if (eval_objective(g.objectives[static_cast<std::size_t>(i)], occ, inf))
      p.bits |= 1u << i;
  return p;
}

namespace {

// Index (0-based) of the lexicographically least rotation, by rank order.
// Booth's algorithm.
std::size_t least_rotation(const std::vector<int>& v) {
  const std::size_t m = v.size();
  std::vector<std::size_t> f(2 * m, static_cast<std::size_t>(-1));
  std::size_t k = 0;
  auto at = [&](std::size_t j) { return v[j % m]; };
  for (std::size_t j = 1; j < 2 * m; ++j) {
    std::size_t i = f[j - k - 1];
    while (i != static_cast<std::size_t>(-1) && at(j) != at(k + i + 1)) {
      if (at(j) < at(k + i + 1)) k = j - i - 1;
      i = f[i];
    }
    if (i == static_cast<std::size_t>(-1) && at(j) != at(k)) {
      if (at(j) < at(k)) k = j;
      f[j - k] = static_cast<std::size_t>(-1);
    } else {
      f[j - k] = i + 1;
    }
  }
  return k;
}

}  // namespace

Lasso canonical_lasso(const Game& g, Lasso l) {
  if (l.cycle.empty()) raise(ErrorKind::Validation, "lasso cycle must be nonempty");
  // Primitive period: smallest divisor d of |cycle| with cycle = u^(|cycle|/d).
  std::size_t len = l.cycle.size();
  for (std::size_t d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool ok = true;
    for (std::size_t j = d; j < len && ok; ++j)
      if (l.cycle[j] != l.cycle[j - d]) ok = false;
    if (ok) {
      l.cycle.resize(d);
      break;
    }
  }
  // Minimal preperiod: absorb matching stem tail into a rotated cycle.
  while (!l.stem.empty() && l.stem.back() == l.cycle.back()) {
    l.stem.pop_back();
    std::rotate(l.cycle.begin(), l.cycle.end() - 1, l.cycle.end());
  }
  // Rotate the period to its name-lexicographically least reading; the states
  // skipped by the rotation are appended to the stem so the play is unchanged.
  std::vector<int> ranks(l.cycle.size());
  for (std::size_t j = 0; j < l.cycle.size(); ++j)
    ranks[j] = g.state_rank[static_cast<std::size_t>(l.cycle[j])];
  std::size_t r = least_rotation(ranks);
  l.stem.insert(l.stem.end(), l.cycle.begin(), l.cycle.begin() + static_cast<std::ptrdiff_t>(r));
  std::rotate(l.cycle.begin(), l.cycle.begin() + static_cast<std::ptrdiff_t>(r), l.cycle.end());
  return l;
}

bool lasso_less(const Game& g, const Lasso& a, const Lasso& b) {
  auto cmp = [&](const std::vector<int>& x, const std::vector<int>& y) {
    return std::lexicographical_compare(
        x.begin(), x.end(), y.begin(), y.end(), [&](int s, int t) {
          return g.state_rank[static_cast<std::size_t>(s)] <
                 g.state_rank[static_cast<std::size_t>(t)];
        });
  };
  if (a.stem != b.stem) return cmp(a.stem, b.stem);
  return cmp(a.cycle, b.cycle);
}

}  // namespace releq
