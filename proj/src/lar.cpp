#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "releq/zerosum.hpp"

namespace releq {

namespace {

constexpr std::size_t kRecordVertexCap = 4'000'000;

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

}  // namespace

// Reduces the deviation arena, for a fixed loser set, to a parity game over
// latest-appearance records of the states the arena can visit. Each answered
// state moves to the front of the record; the depth it came from, together
// with whether the protagonist tolerates settling on the states ahead of that
// depth, becomes the vertex priority (deep good hits are high and even, deep
// bad hits high and odd). The winner under max-parity matches the winner of
// the original condition, giving an independent check of the direct fixpoints.
WinningRegion lar_oracle_solve(const Game& g, const SuspectArena& a, std::uint32_t losers,
                               std::uint64_t budget) {
  WinningRegion r;
  r.losers = losers;
  r.bt = make_b_tracking(g, losers);
  const int b = r.bt.b;
  // Reachable projection states; records permute this list.
  std::set<int> seen;
  for (const auto& v : a.eve) seen.insert(v.state);
  std::vector<int> reach(seen.begin(), seen.end());
  const int nr = static_cast<int>(reach.size());
  if (nr > 20) raise(ErrorKind::Budget, "record space needs more than 20 states");
  const std::uint64_t fact = factorial(nr);
  const std::uint64_t aug =
      (static_cast<std::uint64_t>(a.eve_count()) + static_cast<std::uint64_t>(a.adam_count()))
      << b;
  if (budget == 0 || aug > budget / fact)
    raise(ErrorKind::Budget, "record construction over budget: about " +
                                 std::to_string(aug) + " vertices times " +
                                 std::to_string(fact) + " records");

  // Record interning. A record is a permutation of `reach`, most recent first.
  std::vector<std::vector<int>> records;
  std::map<std::vector<int>, int> record_ids;
  auto intern_record = [&](const std::vector<int>& rec) {
    auto [it, fresh] = record_ids.try_emplace(rec, static_cast<int>(records.size()));
    if (fresh) records.push_back(rec);
    return it->second;
  };
  std::vector<int> identity = reach;
  const int id_rec = intern_record(identity);

  // Vertex interning: packed key = kind | arena id | progress | record | priority.
  struct Key {
    bool is_eve;
    int id;
    std::uint32_t progress;
    int rec;
    int pri;
    bool operator<(const Key& o) const {
      return std::tie(is_eve, id, progress, rec, pri) <
             std::tie(o.is_eve, o.id, o.progress, o.rec, o.pri);
    }
  };
  std::map<Key, int> vertex_ids;
  std::vector<Key> keys;
  std::deque<int> work;
  auto intern_vertex = [&](const Key& k) {
    auto [it, fresh] = vertex_ids.try_emplace(k, static_cast<int>(keys.size()));
    if (fresh) {
      if (keys.size() >= kRecordVertexCap)
        raise(ErrorKind::Budget, "record graph exceeded the vertex cap");
      keys.push_back(k);
      work.push_back(it->second);
    }
    return it->second;
  };

  // Seeds: one fresh-record vertex per arena vertex and progress value, so one
  // solve fills the whole table.
  const std::uint32_t bmask = (1u << b) - 1u;
  std::vector<int> eve_seed(static_cast<std::size_t>(a.eve_count()) << b);
  std::vector<int> adam_seed(static_cast<std::size_t>(a.adam_count()) << b);
  for (int v = 0; v < a.eve_count(); ++v)
    for (std::uint32_t B = 0;; ++B) {
      eve_seed[(static_cast<std::size_t>(v) << b) | B] =
          intern_vertex({true, v, B, id_rec, 0});
      if (B == bmask) break;
    }
  for (int d = 0; d < a.adam_count(); ++d)
    for (std::uint32_t B = 0;; ++B) {
      adam_seed[(static_cast<std::size_t>(d) << b) | B] =
          intern_vertex({false, d, B, id_rec, 0});
      if (B == bmask) break;
    }

  std::vector<std::vector<int>> succ;
  while (!work.empty()) {
    const int v = work.front();
    work.pop_front();
    if (succ.size() <= static_cast<std::size_t>(v)) succ.resize(keys.size());
    const Key k = keys[static_cast<std::size_t>(v)];
    std::vector<int> out;
    if (k.is_eve) {
      for (int ad : a.eve_succ[static_cast<std::size_t>(k.id)])
        out.push_back(intern_vertex({false, ad, k.progress, k.rec, 0}));
    } else {
      const std::vector<int> rec = records[static_cast<std::size_t>(k.rec)];
      for (const auto& e : a.adam_succ[static_cast<std::size_t>(k.id)]) {
        const auto pos = std::find(rec.begin(), rec.end(), e.target) - rec.begin();
        const int h = static_cast<int>(pos);
        std::vector<int> rec2 = rec;
        std::rotate(rec2.begin(), rec2.begin() + h, rec2.begin() + h + 1);
        std::uint64_t settled = 0;
        for (int j = 0; j <= h; ++j) settled |= 1ull << rec[static_cast<std::size_t>(j)];
        const std::uint32_t b2 =
            k.progress | r.bt.touch[static_cast<std::size_t>(e.target)];
        const bool good =
            eve_good(g, losers, a.eve[static_cast<std::size_t>(e.eve)].accountable,
                     r.bt.expand(b2), settled);
        const int pri = 2 * h + (good ? 0 : 1);
        out.push_back(intern_vertex({true, e.eve, b2, intern_record(rec2), pri}));
      }
    }
    if (succ.size() < keys.size()) succ.resize(keys.size());
    succ[static_cast<std::size_t>(v)] = std::move(out);
  }

  TwoPlayerGraph pg;
  pg.succ = std::move(succ);
  pg.succ.resize(keys.size());
  pg.eve_owned.assign(keys.size(), 0);
  std::vector<int> pri(keys.size(), 0);
  for (std::size_t v = 0; v < keys.size(); ++v) {
    pg.eve_owned[v] = keys[v].is_eve ? 1 : 0;
    pri[v] = keys[v].pri;
  }
  auto win = parity_win_max(pg, pri);
  r.eve_win.assign(eve_seed.size(), 0);
  r.adam_win.assign(adam_seed.size(), 0);
  for (std::size_t i = 0; i < eve_seed.size(); ++i)
    r.eve_win[i] = win[static_cast<std::size_t>(eve_seed[i])];
  for (std::size_t i = 0; i < adam_seed.size(); ++i)
    r.adam_win[i] = win[static_cast<std::size_t>(adam_seed[i])];
  return r;
}

}  // namespace releq
