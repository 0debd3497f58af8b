// Release gate: one self-contained check per acceptance criterion.
//
// Usage:  acceptance --criterion N   (N in 1..7)  — run one criterion
//         acceptance                               — run all seven
//
// Every criterion prints its supporting numbers and ends with a single
// verdict line "criterion N: PASS" or "criterion N: FAIL"; the process
// exits 0 iff every requested criterion passed.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "releq/equilibria.hpp"
#include "releq/graph.hpp"
#include "releq/model.hpp"
#include "releq/reductions.hpp"
#include "releq/suspect.hpp"
#include "releq/zerosum.hpp"
#include "test_support.hpp"

namespace {

using releq::Backend;
using releq::CnfFormula;
using releq::Decision;
using releq::DecisionContext;
using releq::DecisionOptions;
using releq::Game;
using releq::Lasso;
using releq::ObjectiveKind;
using releq::SearchBounds;
using releq::SuspectArena;
using releq::TwoPlayerGraph;
using releq::WinnerProfile;
using releq::WinningRegion;

constexpr ObjectiveKind kKinds[] = {ObjectiveKind::Reach,   ObjectiveKind::Safe,
                                    ObjectiveKind::Buchi,   ObjectiveKind::CoBuchi,
                                    ObjectiveKind::Parity,  ObjectiveKind::Muller};

const char* kind_name(ObjectiveKind k) { return releq::objective_kind_name(k); }

// Failure bookkeeping shared by all criteria: count checks, remember the first
// failure's description so a red criterion is diagnosable from the log alone.
struct Tally {
  long long checked = 0;
  long long failed = 0;
  std::string first;

  void note(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      if (failed == 0) first = what;
      ++failed;
    }
  }
  bool clean() const { return failed == 0; }
};

void report(const Tally& t, const char* label) {
  std::printf("   %s: %lld checks, %lld failures\n", label, t.checked, t.failed);
  if (t.failed > 0) std::printf("   first failure: %s\n", t.first.c_str());
}

bool same_decision(const Decision& a, const Decision& b) {
  return a.yes == b.yes && a.witness == b.witness &&
         ((!a.profile && !b.profile) ||
          (a.profile && b.profile && a.profile->bits == b.profile->bits)) &&
         a.method == b.method && a.stats == b.stats;
}

std::uint32_t full_of(const Game& g) { return (1u << g.n_agents) - 1u; }

// ---------------------------------------------------------------- criterion 1
// Every decision problem answered through the direct fixpoint solver must be
// byte-identical to the same decision answered through the independent
// record-based oracle. Both contexts are fresh and see the same call sequence,
// so even the effort counters have to line up.

bool criterion_1() {
  std::printf("== criterion 1: independent decision back-ends agree\n");
  bool ok = true;
  for (ObjectiveKind kind : kKinds) {
    tsup::Rng rng(1000 + static_cast<int>(kind));
    Tally t;
    for (int round = 0; round < 200; ++round) {
      int ns = 2 + rng.below(4);
      int na = 1 + rng.below(3);
      int ma = 1 + rng.below(2);
      Game g = tsup::random_game(rng, ns, na, ma, kind);
      std::uint32_t pin = static_cast<std::uint32_t>(rng.below(1 << na));
      int v = rng.below(na + 1);

      DecisionOptions oracle;
      oracle.backend = Backend::Lar;
      DecisionContext direct(g, 0);
      DecisionContext viaLar(g, 0, oracle);

      WinnerProfile lo{0u, na};
      WinnerProfile hi{full_of(g), na};
      WinnerProfile p{pin, na};
      std::string tag = std::string(kind_name(kind)) + " round " + std::to_string(round);
      t.note(same_decision(releq::constrained_ne_exists(direct, lo, hi),
                           releq::constrained_ne_exists(viaLar, lo, hi)),
             tag + ": full-window query differs");
      t.note(same_decision(releq::constrained_ne_exists(direct, p, p),
                           releq::constrained_ne_exists(viaLar, p, p)),
             tag + ": pinned-payoff query differs");
      t.note(same_decision(releq::swdp(direct, v), releq::swdp(viaLar, v)),
             tag + ": welfare-threshold query differs");
      t.note(same_decision(releq::podp(direct), releq::podp(viaLar)),
             tag + ": maximal-payoff query differs");
    }
    report(t, kind_name(kind));
    ok = ok && t.clean();
  }
  return ok;
}

// ------------------------------------------------------- criteria 2 and 3
// Shared formula stream: a few fixed edge cases plus random CNFs with up to
// 5 variables and 6 clauses, regenerated identically for both criteria.

CnfFormula random_cnf(tsup::Rng& rng) {
  int nv = 1 + rng.below(5);
  int mc = 1 + rng.below(6);
  CnfFormula f;
  f.n = nv;
  for (int j = 0; j < mc; ++j) {
    int width = 1 + rng.below(3);
    std::set<int> lits;
    for (int k = 0; k < width; ++k) {
      int var = 1 + rng.below(nv);
      lits.insert(rng.coin() ? var : -var);
    }
    f.clauses.emplace_back(lits.begin(), lits.end());
  }
  return f;
}

std::vector<CnfFormula> formula_stream() {
  std::vector<CnfFormula> fs;
  fs.push_back(releq::parse_dimacs("p cnf 1 1\n1 0\n"));              // satisfiable
  fs.push_back(releq::parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"));        // contradiction
  fs.push_back(releq::parse_dimacs(
      "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n"));                // contradiction
  tsup::Rng rng(271828);
  for (int i = 0; i < 60; ++i) fs.push_back(random_cnf(rng));
  return fs;
}

bool criterion_2() {
  std::printf("== criterion 2: welfare thresholds on generated formula games track satisfiability\n");
  std::vector<CnfFormula> fs = formula_stream();
  int sat_count = 0;
  Tally t;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const CnfFormula& f = fs[i];
    bool sat = releq::brute_force_sat(f);
    if (sat) ++sat_count;
    int m = static_cast<int>(f.clauses.size());
    std::string tag = "formula " + std::to_string(i);

    releq::GeneratedGame reach = releq::sat_to_reach_game(f);
    t.note(reach.threshold == m + 1, tag + ": reachability threshold is not m+1");
    t.note(releq::swdp(reach.game, *reach.game.initial, m + 1).yes == sat,
           tag + ": reachability welfare answer disagrees with the truth table");

    releq::GeneratedGame safety = releq::sat_to_safety_game(f);
    t.note(safety.threshold == f.n + 1, tag + ": safety threshold is not n+1");
    t.note(releq::swdp(safety.game, *safety.game.initial, f.n + 1).yes == sat,
           tag + ": safety welfare answer disagrees with the truth table");

    releq::GeneratedGame avoid = releq::sat_to_cobuchi_game(f);
    t.note(avoid.threshold == f.n + 1, tag + ": eventual-avoidance threshold is not n+1");
    t.note(releq::swdp(avoid.game, *avoid.game.initial, f.n + 1).yes == sat,
           tag + ": eventual-avoidance welfare answer disagrees with the truth table");
  }
  std::printf("   %zu formulas (%d satisfiable, %zu not), three generators each\n",
              fs.size(), sat_count, fs.size() - static_cast<std::size_t>(sat_count));
  report(t, "threshold queries");
  return t.clean();
}

bool criterion_3() {
  std::printf("== criterion 3: maximal-payoff answers on generated reachability games track satisfiability\n");
  std::vector<CnfFormula> fs = formula_stream();
  Tally t;
  long long unsat_total = 0;
  bool mismatches_are_exactly_unsat = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const CnfFormula& f = fs[i];
    bool sat = releq::brute_force_sat(f);
    if (!sat) ++unsat_total;
    releq::GeneratedGame reach = releq::sat_to_reach_game(f);
    bool yes = releq::podp(reach.game, *reach.game.initial).yes;
    bool mismatch = yes != sat;
    if (mismatch != !sat) mismatches_are_exactly_unsat = false;
    t.note(yes == sat, "formula " + std::to_string(i) +
                           ": maximal-payoff answer disagrees with the truth table");
  }
  report(t, "maximal-payoff queries");
  if (!t.clean()) {
    std::printf(
        "   %lld of %lld formulas are unsatisfiable and every one of them still answers yes%s.\n"
        "   analysis: in these generated games the first agent owns every state and wins\n"
        "   every play, and no other agent ever has more than one available action, so no\n"
        "   unilateral deviation can change any play and every play is stable. The stable\n"
        "   payoffs therefore coincide with the play payoffs, some payoff is always maximal\n"
        "   among the plays, and the maximality question answers yes for every formula.\n"
        "   The welfare-threshold form of the question (criterion 2) does track\n"
        "   satisfiability; the maximality form cannot, for any game in this family.\n",
        unsat_total, t.checked,
        mismatches_are_exactly_unsat ? "" : " (and some satisfiable ones disagree too)");
  }
  return t.clean();
}

// ---------------------------------------------------------------- criterion 4
// The ranked-component fast path must return the same yes/no as the generic
// welfare sweep on visit-infinitely-often games, and the count-based
// maximal-payoff variant may only under-approximate: a yes from the count
// variant without a yes from the exact procedure is a soundness bug, while the
// reverse divergence is expected and only recorded.

bool criterion_4() {
  std::printf("== criterion 4: ranked-component fast path and count variant behave as documented\n");
  tsup::Rng rng(4004);
  Tally sweep, sound;
  long long recorded_divergences = 0;

  {
    // Known divergent fixture: the only stable payoff wins one agent, while an
    // unstable play wins two, so the count variant answers no where the exact
    // procedure answers yes. Exercises the recording path deterministically.
    std::vector<tsup::TbState> states = {
        {"s", 1, {"a", "b"}},
        {"a", 1, {"a"}},
        {"b", 1, {"b"}},
    };
    const char* objectives = R"([
      {"type": "buchi", "accept": ["a"]},
      {"type": "buchi", "accept": ["b"]},
      {"type": "buchi", "accept": ["b"]}
    ])";
    Game g = tsup::turn_based_game(states, 3, objectives, "s");
    DecisionContext ctx(std::move(g), 0);
    Decision exact = releq::podp(ctx);
    Decision counted = releq::podp_count_variant(ctx);
    sound.note(!(counted.yes && !exact.yes),
               "fixture: count variant answered yes where the exact procedure says no");
    if (exact.yes && !counted.yes) ++recorded_divergences;
  }

  for (int round = 0; round < 120; ++round) {
    int ns = 2 + rng.below(5);
    int na = 1 + rng.below(3);
    int ma = 1 + rng.below(2);
    Game g = tsup::random_game(rng, ns, na, ma, ObjectiveKind::Buchi);
    DecisionContext ctx(std::move(g), 0);
    std::string tag = "round " + std::to_string(round);
    for (int v = 0; v <= na; ++v) {
      Decision fast = releq::swdp_buchi(ctx, v);
      Decision slow = releq::swdp(ctx, v);
      sweep.note(fast.yes == slow.yes,
                 tag + " threshold " + std::to_string(v) + ": fast path disagrees");
      if (fast.yes)
        sweep.note(fast.profile && fast.profile->social_welfare() >= v,
                   tag + ": fast-path witness misses the threshold");
    }
    Decision exact = releq::podp(ctx);
    Decision counted = releq::podp_count_variant(ctx);
    sound.note(!(counted.yes && !exact.yes),
               tag + ": count variant answered yes where the exact procedure says no");
    if (exact.yes && !counted.yes) ++recorded_divergences;
  }
  report(sweep, "welfare sweep agreement");
  report(sound, "count-variant soundness");
  std::printf("   recorded divergences (exact yes, count variant no): %lld — "
              "expected for payoffs maximal by dominance but not by count\n",
              recorded_divergences);
  return sweep.clean() && sound.clean();
}

// ---------------------------------------------------------------- criterion 5
// If the record-based oracle finds any stable play when the stem and cycle
// bounds are doubled to 2*|St|^2, a witness already exists within the default
// |St|^2 bounds; and a found witness always fits those bounds.

bool criterion_5() {
  std::printf("== criterion 5: doubled search bounds never reveal a stable play the default bounds miss\n");
  bool ok = true;
  for (ObjectiveKind kind : kKinds) {
    tsup::Rng rng(5000 + static_cast<int>(kind));
    Tally t;
    long long with_ne = 0;
    for (int round = 0; round < 60; ++round) {
      int ns = 2 + rng.below(4);
      int na = 1 + rng.below(3);
      int ma = 1 + rng.below(2);
      Game g = tsup::random_game(rng, ns, na, ma, kind);
      std::size_t b = static_cast<std::size_t>(ns) * static_cast<std::size_t>(ns);

      DecisionOptions doubled;
      doubled.backend = Backend::Lar;
      doubled.bounds = SearchBounds{2 * b, 2 * b};
      WinnerProfile lo{0u, na};
      WinnerProfile hi{full_of(g), na};
      Decision wide = releq::constrained_ne_exists(g, 0, lo, hi, doubled);
      Decision tight = releq::constrained_ne_exists(g, 0, lo, hi);

      std::string tag = std::string(kind_name(kind)) + " round " + std::to_string(round);
      t.note(!wide.yes || tight.yes,
             tag + ": stable play found only under doubled bounds");
      t.note(!tight.yes || wide.yes,
             tag + ": stable play lost when the bounds grow");
      if (tight.yes) {
        ++with_ne;
        t.note(tight.witness && tight.witness->stem.size() <= b &&
                   tight.witness->cycle.size() <= b,
               tag + ": default-bounds witness exceeds |St|^2");
      }
    }
    std::printf("   %s: %lld of 60 games have a stable play; ", kind_name(kind), with_ne);
    std::printf("%lld checks, %lld failures\n", t.checked, t.failed);
    if (!t.clean()) std::printf("   first failure: %s\n", t.first.c_str());
    ok = ok && t.clean();
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 6
// The number of reachable protagonist vertices in the deviation arena must
// grow no faster than a quadratic in the transition-table size: fit E = a*T^2
// by least squares over the census and require every sample to sit under a
// small multiple of the fit, with the log-log regression slope at most 2.

bool criterion_6() {
  std::printf("== criterion 6: deviation-arena growth stays quadratic in the transition table\n");
  tsup::Rng rng(600600);
  std::vector<std::pair<double, double>> pts;  // (T, E)
  int kind_i = 0;
  for (int ns = 2; ns <= 8; ++ns) {
    for (int rep = 0; rep < 40; ++rep) {
      int na = 1 + rng.below(3);
      int ma = 1 + rng.below(2);
      Game g = tsup::random_game(rng, ns, na, ma, kKinds[kind_i++ % 6]);
      double table = 0;
      for (int s = 0; s < g.state_count(); ++s)
        table += static_cast<double>(g.move_count(s));
      SuspectArena a = releq::build_suspect_arena(g, 0);
      pts.emplace_back(table, static_cast<double>(a.eve_count()));
    }
  }

  double num = 0, den = 0;
  for (auto& [t, e] : pts) {
    num += e * t * t;
    den += t * t * t * t;
  }
  double alpha = num / den;
  double worst_ratio = 0, tol_failures = 0;
  for (auto& [t, e] : pts) {
    worst_ratio = std::max(worst_ratio, e / (t * t));
    if (e > 3.0 * alpha * t * t + 8.0) ++tol_failures;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [t, e] : pts) {
    double x = std::log(t), y = std::log(std::max(e, 1.0));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(pts.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  std::printf("   %zu games, table sizes %.0f..%.0f\n", pts.size(),
              std::min_element(pts.begin(), pts.end())->first,
              std::max_element(pts.begin(), pts.end())->first);
  std::printf("   least-squares quadratic coefficient %.4f, worst E/T^2 ratio %.4f\n",
              alpha, worst_ratio);
  std::printf("   samples above 3x the fitted quadratic (+8): %.0f\n", tol_failures);
  std::printf("   log-log regression slope %.3f (must be <= 2.15)\n", slope);
  return tol_failures == 0 && slope <= 2.15;
}

// ---------------------------------------------------------------- criterion 7
// Randomized property suites, at least 10^4 cases per property.

TwoPlayerGraph random_graph(tsup::Rng& rng, int n) {
  TwoPlayerGraph g;
  g.succ.resize(static_cast<std::size_t>(n));
  g.eve_owned.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    int deg = 1 + rng.below(3);
    std::set<int> out;
    for (int k = 0; k < deg; ++k) out.insert(rng.below(n));
    g.succ[static_cast<std::size_t>(v)].assign(out.begin(), out.end());
    g.eve_owned[static_cast<std::size_t>(v)] = rng.coin() ? 1 : 0;
  }
  return g;
}

std::vector<char> random_subset(tsup::Rng& rng, int n) {
  std::vector<char> s(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = rng.coin() ? 1 : 0;
  return s;
}

bool criterion_7() {
  std::printf("== criterion 7: randomized determinacy, monotonicity and soundness suites\n");
  bool ok = true;

  // Property: reach determinacy. The complement of an attractor is a trap for
  // the attracting player: her vertices outside have no way in, the opponent
  // always has a way to stay out.
  {
    tsup::Rng rng(7101);
    Tally t;
    for (int i = 0; i < 10000; ++i) {
      int n = 2 + rng.below(6);
      TwoPlayerGraph g = random_graph(rng, n);
      std::vector<char> target = random_subset(rng, n);
      bool for_eve = rng.coin();
      std::vector<char> attr = releq::attractor(g, target, for_eve);
      bool good = true;
      for (int v = 0; v < n && good; ++v) {
        if (target[v] && !attr[v]) good = false;
        if (attr[v]) continue;
        bool attacker_owned = (g.eve_owned[v] != 0) == for_eve;
        bool some_in = false, some_out = false;
        for (int w : g.succ[static_cast<std::size_t>(v)]) (attr[w] ? some_in : some_out) = true;
        if (attacker_owned && some_in) good = false;
        if (!attacker_owned && !some_out) good = false;
      }
      t.note(good, "attractor complement is not a trap, case " + std::to_string(i));
    }
    report(t, "reach determinacy (attractor complement is a trap)");
    ok = ok && t.clean();
  }

  // Property: repeat-visit determinacy. The fixpoint answer for one player and
  // the colour-set solver run for the swapped player on the negated condition
  // must split the vertices exactly.
  {
    tsup::Rng rng(7102);
    Tally t;
    for (int i = 0; i < 10000; ++i) {
      int n = 2 + rng.below(5);
      TwoPlayerGraph g = random_graph(rng, n);
      std::vector<char> target = random_subset(rng, n);
      std::vector<char> eve_side = releq::buchi_win(g, target, true);

      TwoPlayerGraph swapped = g;
      for (auto& o : swapped.eve_owned) o = o ? 0 : 1;
      std::vector<int> colour(static_cast<std::size_t>(n));
      std::uint32_t target_cols = 0;
      for (int v = 0; v < n; ++v) {
        colour[static_cast<std::size_t>(v)] = v;
        if (target[v]) target_cols |= 1u << v;
      }
      std::vector<char> adam_side = releq::muller_win(
          swapped, colour, [&](std::uint32_t inf) { return (inf & target_cols) == 0; });

      bool split = true;
      for (int v = 0; v < n; ++v)
        if ((eve_side[v] != 0) == (adam_side[v] != 0)) split = false;
      t.note(split, "repeat-visit duality broken, case " + std::to_string(i));
    }
    report(t, "repeat-visit determinacy (fixpoint vs swapped colour-set solver)");
    ok = ok && t.clean();
  }

  // Property: deviation-arena determinacy across solver paths. Each region
  // table assigns every (vertex, progress) entry to exactly one side by
  // construction, so the executable content is that the table is complete and
  // that two independent solving paths assign the same winner everywhere —
  // and that re-solving changes nothing.
  {
    tsup::Rng rng(7103);
    Tally shape, stable, oracle_part;
    for (int i = 0; i < 10000; ++i) {
      int ns = 2 + rng.below(3);
      int na = 1 + rng.below(3);
      Game g = tsup::random_game(rng, ns, na, 1 + rng.below(2), kKinds[i % 6]);
      SuspectArena a = releq::build_suspect_arena(g, 0);
      std::uint32_t losers = static_cast<std::uint32_t>(rng.below(1 << na));
      WinningRegion r = releq::fixpoint_region(g, a, losers);

      std::size_t per = std::size_t{1} << r.bt.b;
      shape.note(r.losers == losers &&
                     r.eve_win.size() == static_cast<std::size_t>(a.eve_count()) * per &&
                     r.adam_win.size() == static_cast<std::size_t>(a.adam_count()) * per,
                 "region table incomplete, case " + std::to_string(i));

      WinningRegion r2 = releq::fixpoint_region(g, a, losers);
      stable.note(r.eve_win == r2.eve_win && r.adam_win == r2.adam_win,
                  "re-solve changed the region, case " + std::to_string(i));

      if (i % 10 == 0) {
        WinningRegion ro = releq::lar_oracle_solve(g, a, losers, 1'000'000);
        oracle_part.note(ro.eve_win == r.eve_win && ro.adam_win == r.adam_win,
                         "oracle region differs, case " + std::to_string(i));
      }
    }
    report(shape, "deviation-arena region completeness");
    report(stable, "fixpoint re-solve stability");
    report(oracle_part, "solver-path agreement subsample");
    ok = ok && shape.clean() && stable.clean() && oracle_part.clean();
  }

  // Property: monotonicity of the graph primitives in their target set.
  {
    tsup::Rng rng(7104);
    Tally t;
    for (int i = 0; i < 10000; ++i) {
      int n = 2 + rng.below(6);
      TwoPlayerGraph g = random_graph(rng, n);
      std::vector<char> small = random_subset(rng, n);
      std::vector<char> big = small;
      for (int v = 0; v < n; ++v)
        if (rng.coin()) big[static_cast<std::size_t>(v)] = 1;
      bool for_eve = rng.coin();

      std::vector<char> a1 = releq::attractor(g, small, for_eve);
      std::vector<char> a2 = releq::attractor(g, big, for_eve);
      std::vector<char> b1 = releq::buchi_win(g, small, for_eve);
      std::vector<char> b2 = releq::buchi_win(g, big, for_eve);
      std::vector<char> idem = releq::attractor(g, a1, for_eve);

      bool good = true;
      for (int v = 0; v < n; ++v) {
        if (a1[v] && !a2[v]) good = false;   // larger target, no smaller reach set
        if (b1[v] && !b2[v]) good = false;   // same for repeated visits
        if (b1[v] && !a1[v]) good = false;   // forcing revisits forces one visit
        if (idem[v] != a1[v]) good = false;  // attractor of its own output
      }
      t.note(good, "target monotonicity / idempotence broken, case " + std::to_string(i));
    }
    report(t, "target monotonicity and attractor idempotence");
    ok = ok && t.clean();
  }

  // Property: shrinking the loser set can only grow the protagonist's region
  // (fewer agents to keep losing).
  {
    tsup::Rng rng(7105);
    Tally t;
    for (int game_i = 0; game_i < 2500; ++game_i) {
      int ns = 2 + rng.below(3);
      int na = 1 + rng.below(3);
      Game g = tsup::random_game(rng, ns, na, 1 + rng.below(2), kKinds[game_i % 6]);
      SuspectArena a = releq::build_suspect_arena(g, 0);
      for (int pair_i = 0; pair_i < 4; ++pair_i) {
        std::uint32_t big = static_cast<std::uint32_t>(rng.below(1 << na));
        std::uint32_t small = big & static_cast<std::uint32_t>(rng.below(1 << na));
        WinningRegion rb = releq::fixpoint_region(g, a, big);
        WinningRegion rs = releq::fixpoint_region(g, a, small);
        bool good = true;
        for (int e = 0; e < a.eve_count(); ++e)
          if (rb.eve(e, 0) && !rs.eve(e, 0)) good = false;
        t.note(good, "loser-set monotonicity broken, game " + std::to_string(game_i) +
                         " pair " + std::to_string(pair_i));
      }
    }
    report(t, "loser-set monotonicity of the protagonist region");
    ok = ok && t.clean();
  }

  // Properties over the decision procedures themselves: witnesses re-verify
  // and satisfy their constraint, the welfare threshold is monotone, and a
  // pinned yes implies a threshold yes at that welfare. The game stream runs
  // until every counter has its 10^4 cases.
  {
    tsup::Rng rng(7106);
    Tally witness_t, monotone_t, pin_t;
    long long pins_with_ne = 0;
    int game_i = 0;
    while (witness_t.checked < 10000 || monotone_t.checked < 10000 ||
           pin_t.checked < 10000) {
      int ns = 2 + rng.below(3);
      int na = 1 + rng.below(3);
      Game g = tsup::random_game(rng, ns, na, 1 + rng.below(2), kKinds[game_i % 6]);
      DecisionContext ctx(std::move(g), 0);
      std::string tag = "game " + std::to_string(game_i);
      ++game_i;

      auto check_witness = [&](const Decision& d, const char* what) {
        if (!d.yes) return;
        bool good = d.witness && d.profile &&
                    releq::verify_ne_lasso(ctx, *d.witness) &&
                    releq::payoff_of_lasso(ctx.game(), *d.witness).bits == d.profile->bits;
        witness_t.note(good, tag + ": " + what + " witness fails re-verification");
      };

      for (std::uint32_t p = 0; p < (1u << na); ++p) {
        WinnerProfile pin{p, na};
        Decision d = releq::constrained_ne_exists(ctx, pin, pin);
        check_witness(d, "pinned");
        bool implied = true;
        if (d.yes) {
          ++pins_with_ne;
          implied = releq::swdp(ctx, std::popcount(p)).yes;
        }
        pin_t.note(implied, tag + ": pinned yes without a threshold yes");
      }

      bool seen_yes = false;
      for (int v = ctx.game().n_agents; v >= 0; --v) {
        Decision d = releq::swdp(ctx, v);
        check_witness(d, "threshold");
        if (d.yes && d.profile)
          witness_t.note(d.profile->social_welfare() >= v,
                         tag + ": threshold witness below the threshold");
        monotone_t.note(!seen_yes || d.yes,
                        tag + ": threshold " + std::to_string(v) +
                            " lost a yes held at a higher threshold");
        seen_yes = seen_yes || d.yes;
      }

      Decision best = releq::podp(ctx);
      check_witness(best, "maximal-payoff");
      if (best.yes && best.profile) {
        std::vector<std::uint32_t> front = releq::pareto_front(ctx.achievable());
        witness_t.note(std::find(front.begin(), front.end(), best.profile->bits) !=
                           front.end(),
                       tag + ": maximal-payoff witness is not on the payoff frontier");
      }

      Decision any = releq::constrained_ne_exists(ctx, WinnerProfile{0u, na},
                                                  WinnerProfile{full_of(ctx.game()), na});
      check_witness(any, "unconstrained");
    }
    std::printf("   decision stream: %d games, %lld pinned payoffs stable\n", game_i,
                pins_with_ne);
    report(witness_t, "yes-witness soundness and constraints");
    report(monotone_t, "welfare-threshold monotonicity");
    report(pin_t, "pinned yes implies threshold yes");
    ok = ok && witness_t.clean() && monotone_t.clean() && pin_t.clean();
  }

  return ok;
}

bool run_criterion(int n) {
  bool ok = false;
  switch (n) {
    case 1: ok = criterion_1(); break;
    case 2: ok = criterion_2(); break;
    case 3: ok = criterion_3(); break;
    case 4: ok = criterion_4(); break;
    case 5: ok = criterion_5(); break;
    case 6: ok = criterion_6(); break;
    case 7: ok = criterion_7(); break;
    default: return false;
  }
  std::printf("criterion %d: %s\n", n, ok ? "PASS" : "FAIL");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 1) {
    bool all = true;
    for (int n = 1; n <= 7; ++n) all = run_criterion(n) && all;
    return all ? 0 : 1;
  }
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    int n = std::atoi(argv[2]);
    if (n >= 1 && n <= 7) return run_criterion(n) ? 0 : 1;
  }
  std::fprintf(stderr, "usage: %s [--criterion N]   with N in 1..7\n", argv[0]);
  return 2;
}
