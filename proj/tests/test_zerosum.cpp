#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>

#include "doctest.h"
#include "releq/model.hpp"
#include "releq/suspect.hpp"
#include "releq/zerosum.hpp"
#include "test_support.hpp"

using namespace releq;

namespace {

TwoPlayerGraph random_graph(tsup::Rng& rng, int n, int max_deg) {
  TwoPlayerGraph g;
  g.succ.resize(static_cast<std::size_t>(n));
  g.eve_owned.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    g.eve_owned[static_cast<std::size_t>(v)] = rng.coin() ? 1 : 0;
    int deg = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg)));
    for (int k = 0; k < deg; ++k)
      g.succ[static_cast<std::size_t>(v)].push_back(
          static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
  }
  return g;
}

// Reference attractor: iterate the defining operator until it stabilizes.
std::vector<char> attractor_oracle(const TwoPlayerGraph& g, const std::vector<char>& target,
                                   bool for_eve) {
  std::vector<char> in = target;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.size(); ++v) {
      auto vi = static_cast<std::size_t>(v);
      if (in[vi]) continue;
      bool mine = (g.eve_owned[vi] != 0) == for_eve;
      bool some = false, all = true;
      for (int w : g.succ[vi]) {
        if (in[static_cast<std::size_t>(w)]) some = true;
        else all = false;
      }
      if (mine ? some : all) in[vi] = changed = true;
    }
  }
  return in;
}

// Positional strategy pairs on tiny graphs: the winner table for any
// condition evaluated on the looping part of the resulting play.
std::vector<char> positional_oracle(const TwoPlayerGraph& g,
                                    const std::function<bool(std::uint64_t)>& eve_likes) {
  const int n = g.size();
  std::vector<int> eve_vs, adam_vs;
  for (int v = 0; v < n; ++v)
    (g.eve_owned[static_cast<std::size_t>(v)] ? eve_vs : adam_vs).push_back(v);
  auto strategies = [&](const std::vector<int>& owned) {
    std::vector<std::vector<int>> all;
    std::vector<std::size_t> pick(owned.size(), 0);
    while (true) {
      std::vector<int> choice(static_cast<std::size_t>(n), -1);
      for (std::size_t k = 0; k < owned.size(); ++k)
        choice[static_cast<std::size_t>(owned[k])] =
            g.succ[static_cast<std::size_t>(owned[k])][pick[k]];
      all.push_back(choice);
      std::size_t k = 0;
      for (; k < owned.size(); ++k) {
        if (++pick[k] < g.succ[static_cast<std::size_t>(owned[k])].size()) break;
        pick[k] = 0;
      }
      if (k == owned.size()) break;
    }
    return all;
  };
  auto eve_strats = strategies(eve_vs);
  auto adam_strats = strategies(adam_vs);
  std::vector<char> win(static_cast<std::size_t>(n), 0);
  for (int v0 = 0; v0 < n; ++v0) {
    bool exists = false;
    for (const auto& se : eve_strats) {
      bool beats_all = true;
      for (const auto& sa : adam_strats) {
        std::vector<int> when(static_cast<std::size_t>(n), -1);
        int v = v0, step = 0;
        std::vector<int> trail;
        while (when[static_cast<std::size_t>(v)] < 0) {
          when[static_cast<std::size_t>(v)] = step++;
          trail.push_back(v);
          v = g.eve_owned[static_cast<std::size_t>(v)] ? se[static_cast<std::size_t>(v)]
                                                       : sa[static_cast<std::size_t>(v)];
        }
        std::uint64_t loop = 0;
        for (std::size_t k = static_cast<std::size_t>(when[static_cast<std::size_t>(v)]);
             k < trail.size(); ++k)
          loop |= 1ull << trail[k];
        if (!eve_likes(loop)) {
          beats_all = false;
          break;
        }
      }
      if (beats_all) {
        exists = true;
        break;
      }
    }
    win[static_cast<std::size_t>(v0)] = exists ? 1 : 0;
  }
  return win;
}

}  // namespace

TEST_CASE("attractor matches the defining fixpoint") {
  tsup::Rng rng(41);
  for (int round = 0; round < 300; ++round) {
    TwoPlayerGraph g = random_graph(rng, 2 + static_cast<int>(rng.below(8)), 3);
    std::vector<char> target(static_cast<std::size_t>(g.size()), 0);
    for (auto& t : target) t = rng.below(3) == 0;
    bool side = rng.coin();
    CHECK(attractor(g, target, side) == attractor_oracle(g, target, side));
  }
}

TEST_CASE("repeated-visit solver matches positional strategy enumeration") {
  tsup::Rng rng(42);
  for (int round = 0; round < 250; ++round) {
    TwoPlayerGraph g = random_graph(rng, 2 + static_cast<int>(rng.below(4)), 2);
    std::uint64_t tmask = rng.below(1ull << g.size());
    std::vector<char> target(static_cast<std::size_t>(g.size()), 0);
    for (int v = 0; v < g.size(); ++v) target[static_cast<std::size_t>(v)] = (tmask >> v) & 1;
    bool side = rng.coin();
    auto got = buchi_win(g, target, side);
    auto want = positional_oracle(
        g, [&](std::uint64_t loop) { return ((loop & tmask) != 0) == side; });
    if (!side)
      for (auto& w : want) w = !w;  // oracle computed adam's region
    CHECK(got == want);
  }
}

TEST_CASE("max-parity solver matches positional strategy enumeration") {
  tsup::Rng rng(43);
  for (int round = 0; round < 250; ++round) {
    TwoPlayerGraph g = random_graph(rng, 2 + static_cast<int>(rng.below(4)), 2);
    std::vector<int> pri(static_cast<std::size_t>(g.size()));
    for (auto& p : pri) p = static_cast<int>(rng.below(5));
    auto want = positional_oracle(g, [&](std::uint64_t loop) {
      int top = -1;
      for (std::uint64_t m = loop; m; m &= m - 1)
        top = std::max(top, pri[static_cast<std::size_t>(std::countr_zero(m))]);
      return top % 2 == 0;
    });
    CHECK(parity_win_max(g, pri) == want);
  }
}

TEST_CASE("set-condition solver agrees with the dedicated solvers") {
  tsup::Rng rng(44);
  for (int round = 0; round < 200; ++round) {
    TwoPlayerGraph g = random_graph(rng, 2 + static_cast<int>(rng.below(6)), 3);
    // Distinct colour per vertex, so colour sets are vertex sets.
    std::vector<int> colour(static_cast<std::size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) colour[static_cast<std::size_t>(v)] = v;
    std::uint64_t tmask = rng.below(1ull << g.size());
    std::vector<char> target(static_cast<std::size_t>(g.size()), 0);
    for (int v = 0; v < g.size(); ++v) target[static_cast<std::size_t>(v)] = (tmask >> v) & 1;

    auto as_buchi = muller_win(
        g, colour, [&](std::uint32_t set) { return (set & tmask) != 0; });
    CHECK(as_buchi == buchi_win(g, target, true));

    auto as_cobuchi = muller_win(
        g, colour, [&](std::uint32_t set) { return (set & tmask) == 0; });
    auto adam_recurs = buchi_win(g, target, false);
    for (auto& w : adam_recurs) w = !w;
    CHECK(as_cobuchi == adam_recurs);

    std::vector<int> pri(static_cast<std::size_t>(g.size()));
    for (auto& p : pri) p = static_cast<int>(rng.below(5));
    auto as_parity = muller_win(g, colour, [&](std::uint32_t set) {
      int top = -1;
      for (std::uint32_t m = set; m; m &= m - 1)
        top = std::max(top, pri[static_cast<std::size_t>(std::countr_zero(m))]);
      return top % 2 == 0;
    });
    CHECK(as_parity == parity_win_max(g, pri));
  }
}

TEST_CASE("region table of a two-state sole-owner game") {
  Game g = tsup::turn_based_game(
      {{"a", 1, {"a", "b"}}, {"b", 1, {"b"}}}, 2,
      R"([{"type":"reach","target":["b"]},{"type":"reach","target":["b"]}])", "a");
  SuspectArena a = build_suspect_arena(g, g.state_id("a"));
  int va = a.find_eve(g.state_id("a"), 0b11);
  REQUIRE(va >= 0);
  int ad_stay = a.eve_succ[static_cast<std::size_t>(va)][0];
  int ad_go = a.eve_succ[static_cast<std::size_t>(va)][1];

  // Both agents claimed losing: the proposer can always answer the jump to b,
  // which blames agent 1 and satisfies its goal; indefensible.
  WinningRegion both = fixpoint_region(g, a, 0b11);
  CHECK(both.bt.b == 2);
  CHECK_FALSE(both.eve(va, 0));
  int vb1 = a.find_eve(g.state_id("b"), 0b01);
  REQUIRE(vb1 >= 0);
  CHECK_FALSE(both.eve(vb1, both.bt.compact(0b11)));

  // Agent 2 claimed losing only: staying put is defensible (a deviation to b
  // blames agent 1, whose win is permitted), the prescribed jump is not.
  WinningRegion second = fixpoint_region(g, a, 0b10);
  CHECK(second.bt.b == 1);
  CHECK(second.eve(va, 0));
  CHECK(second.adam(ad_stay, 0));
  CHECK_FALSE(second.adam(ad_go, 0));

  // No losers: nothing to defend.
  WinningRegion none = fixpoint_region(g, a, 0);
  CHECK(none.bt.b == 0);
  CHECK(none.eve(va, 0));
  CHECK(none.adam(ad_go, 0));
}

TEST_CASE("direct fixpoints agree with the record-reduction solver") {
  const ObjectiveKind kinds[] = {ObjectiveKind::Reach,  ObjectiveKind::Safe,
                                 ObjectiveKind::Buchi,  ObjectiveKind::CoBuchi,
                                 ObjectiveKind::Parity, ObjectiveKind::Muller};
  tsup::Rng rng(4242);
  for (int round = 0; round < 150; ++round) {
    ObjectiveKind kind = kinds[round % 6];
    int n_agents = 1 + static_cast<int>(rng.below(3));
    Game g = tsup::random_game(rng, 1 + static_cast<int>(rng.below(4)), n_agents, 2, kind);
    SuspectArena a = build_suspect_arena(g, 0);
    const std::uint32_t full = (1u << g.n_agents) - 1u;
    for (std::uint32_t losers = 0; losers <= full; ++losers) {
      WinningRegion fix = fixpoint_region(g, a, losers);
      WinningRegion lar = lar_oracle_solve(g, a, losers, 1'000'000);
      CAPTURE(round);
      CAPTURE(static_cast<int>(kind));
      CAPTURE(losers);
      REQUIRE(fix.bt.b == lar.bt.b);
      CHECK(fix.eve_win == lar.eve_win);
      CHECK(fix.adam_win == lar.adam_win);
    }
  }
}

TEST_CASE("record solver refuses oversized record spaces") {
  tsup::Rng rng(7);
  Game g = tsup::random_game(rng, 4, 2, 2, ObjectiveKind::Buchi);
  SuspectArena a = build_suspect_arena(g, 0);
  CHECK_THROWS_AS(lar_oracle_solve(g, a, 0, 10), Error);
  try {
    lar_oracle_solve(g, a, 0, 10);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::Budget);
  }
}

TEST_CASE("set-condition solver rejects more than 16 colours") {
  TwoPlayerGraph g;
  g.succ.assign(17, {0});
  g.eve_owned.assign(17, 1);
  std::vector<int> colour(17);
  for (int v = 0; v < 17; ++v) colour[static_cast<std::size_t>(v)] = v;
  CHECK_THROWS_AS(muller_win(g, colour, [](std::uint32_t) { return true; }), Error);
}
