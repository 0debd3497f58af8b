#include "releq/suspect.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "json.hpp"

namespace releq {

std::uint32_t deviators_to(const Game& g, int s, const std::vector<int>& move, int target) {
  std::uint32_t mask = 0;
  std::vector<int> probe = move;
  for (int i = 0; i < g.n_agents; ++i) {
    for (int alt : g.avail[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]) {
      probe[static_cast<std::size_t>(i)] = alt;
      if (g.tr[static_cast<std::size_t>(s)][g.encode_move(s, probe)] == target) {
        mask |= 1u << i;
        break;
      }
    }
    probe[static_cast<std::size_t>(i)] = move[static_cast<std::size_t>(i)];
  }
  return mask;
}

int SuspectArena::find_eve(int state, std::uint32_t accountable) const {
  for (std::size_t v = 0; v < eve.size(); ++v)
    if (eve[v].state == state && eve[v].accountable == accountable)
      return static_cast<int>(v);
  return -1;
}

SuspectArena build_suspect_arena(const Game& g, int source) {
  if (source < 0 || source >= g.state_count())
    raise(ErrorKind::Usage, "arena source state out of range");
  SuspectArena a;
  std::map<std::pair<int, std::uint32_t>, int> seen;
  std::deque<int> queue;
  auto intern = [&](int s, std::uint32_t acc) {
    auto [it, fresh] = seen.try_emplace({s, acc}, static_cast<int>(a.eve.size()));
    if (fresh) {
      a.eve.push_back({s, acc});
      a.eve_succ.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  const std::uint32_t all = (g.n_agents >= 32) ? ~0u : ((1u << g.n_agents) - 1u);
  a.source = intern(source, all);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    const int s = a.eve[static_cast<std::size_t>(v)].state;
    const std::uint32_t acc = a.eve[static_cast<std::size_t>(v)].accountable;
    const std::size_t moves = g.move_count(s);
    for (std::size_t rank = 0; rank < moves; ++rank) {
      int ad = static_cast<int>(a.adam.size());
      a.adam.push_back({v, rank});
      a.adam_succ.emplace_back();
      a.eve_succ[static_cast<std::size_t>(v)].push_back(ad);
      const std::vector<int> move = g.decode_move(s, rank);
      const int obey_target = g.tr[static_cast<std::size_t>(s)][rank];
      // Collect the distinct single-deviation targets.
      std::vector<int> targets;
      {
        std::vector<int> probe = move;
        for (int i = 0; i < g.n_agents; ++i) {
          for (int alt : g.avail[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]) {
            probe[static_cast<std::size_t>(i)] = alt;
            targets.push_back(g.tr[static_cast<std::size_t>(s)][g.encode_move(s, probe)]);
          }
          probe[static_cast<std::size_t>(i)] = move[static_cast<std::size_t>(i)];
        }
      }
      std::sort(targets.begin(), targets.end(), [&](int x, int y) {
        return g.state_rank[static_cast<std::size_t>(x)] < g.state_rank[static_cast<std::size_t>(y)];
      });
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      for (int t : targets) {
        std::uint32_t next = acc & deviators_to(g, s, move, t);
        if (t == obey_target) next = acc;  // the prescribed action of every
                                           // agent already reaches t
        a.adam_succ[static_cast<std::size_t>(ad)].push_back(
            {t, intern(t, next), t == obey_target});
      }
    }
  }
  return a;
}

std::vector<std::uint32_t> accountable_layers(const SuspectArena& a) {
  std::vector<std::uint32_t> out;
  for (const auto& v : a.eve) out.push_back(v.accountable);
  std::sort(out.begin(), out.end(), [](std::uint32_t x, std::uint32_t y) {
    int px = std::popcount(x), py = std::popcount(y);
    return px != py ? px < py : x < y;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<std::pair<int, int>>> embed_obedient(const Game& g,
                                                               const SuspectArena& a,
                                                               const Lasso& l) {
  if (a.source < 0 || !lasso_is_play(g, l, a.eve[static_cast<std::size_t>(a.source)].state))
    return std::nullopt;
  std::vector<int> play = l.stem;
  play.insert(play.end(), l.cycle.begin(), l.cycle.end());
  play.push_back(l.cycle.front());  // wrap target for the final step
  std::vector<std::pair<int, int>> out;
  int v = a.source;
  for (std::size_t k = 0; k + 1 < play.size(); ++k) {
    const int s = play[k], t = play[k + 1];
    int chosen_adam = -1, next_eve = -1;
    for (int ad : a.eve_succ[static_cast<std::size_t>(v)]) {
      // eve_succ is in move-rank order; ranks order moves by action name per
      // agent, so the first hit is the name-least realizing move.
      if (g.tr[static_cast<std::size_t>(s)][a.adam[static_cast<std::size_t>(ad)].move] != t)
        continue;
      for (const auto& e : a.adam_succ[static_cast<std::size_t>(ad)])
        if (e.obey) {
          chosen_adam = ad;
          next_eve = e.eve;
          break;
        }
      if (chosen_adam >= 0) break;
    }
    if (chosen_adam < 0) return std::nullopt;
    out.emplace_back(v, chosen_adam);
    v = next_eve;
  }
  return out;
}

std::uint32_t lambda_limit(const SuspectArena& a, const std::vector<int>& cycle_eves) {
  if (cycle_eves.empty())
    raise(ErrorKind::Usage, "arena cycle must contain at least one vertex");
  std::uint32_t limit = 0;
  for (std::size_t k = 0; k < cycle_eves.size(); ++k) {
    int v = cycle_eves[k];
    if (v < 0 || v >= a.eve_count())
      raise(ErrorKind::Usage, "arena cycle refers to an unknown vertex");
    std::uint32_t acc = a.eve[static_cast<std::size_t>(v)].accountable;
    if (k == 0)
      limit = acc;
    else if (acc != limit)
      raise(ErrorKind::Internal, "accountable sets disagree on an arena cycle");
  }
  return limit;
}

std::string arena_to_json(const Game& g, const SuspectArena& a) {
  using nlohmann::json;
  auto acc_string = [&](std::uint32_t mask) {
    WinnerProfile p{mask, g.n_agents};
    return p.to_string();
  };
  json eve = json::array();
  for (std::size_t v = 0; v < a.eve.size(); ++v) {
    eve.push_back({{"id", v},
                   {"state", g.states[static_cast<std::size_t>(a.eve[v].state)]},
                   {"accountable", acc_string(a.eve[v].accountable)},
                   {"proposals", a.eve_succ[v]}});
  }
  json adam = json::array();
  for (std::size_t d = 0; d < a.adam.size(); ++d) {
    const auto& av = a.adam[d];
    const int s = a.eve[static_cast<std::size_t>(av.eve)].state;
    json move = json::array();
    for (int act : g.decode_move(s, av.move))
      move.push_back(g.actions[static_cast<std::size_t>(act)]);
    json edges = json::array();
    for (const auto& e : a.adam_succ[d]) {
      edges.push_back({{"target", g.states[static_cast<std::size_t>(e.target)]},
                       {"eve", e.eve},
                       {"obey", e.obey}});
    }
    adam.push_back({{"id", d}, {"eve", av.eve}, {"move", move}, {"edges", edges}});
  }
  json out{{"source", a.source},
           {"eve", eve},
           {"adam", adam},
           {"census", {{"eve_states", a.eve_count()}, {"adam_states", a.adam_count()}}}};
  return out.dump(2) + "\n";
}

}  // namespace releq
