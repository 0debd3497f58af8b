#include "releq/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "releq/game_json.hpp"

namespace releq {

using ojson = nlohmann::ordered_json;

namespace {

bool parse_int(const std::string& tok, long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtol(tok.c_str(), &end, 10);
  return end == tok.c_str() + tok.size();
}

std::string lit_name(int lit) {
  int v = lit > 0 ? lit : -lit;
  return (lit > 0 ? "x" : "nx") + std::to_string(v);
}

std::string occ_name(int clause_1based, int lit) {
  return "c" + std::to_string(clause_1based) + "_" + lit_name(lit);
}

// The common turn-based skeleton: a spine v0..v{n+m}; spine vertex v{c-1}
// branches through one intermediate state per choice in column c (two literal
// states for a variable column, one occurrence state per clause literal for a
// clause column), every intermediate state rejoining at v{c}. Agent 0 picks
// the branch; everyone else only ever has the idle action.
struct Skeleton {
  ojson json;                                // all fields except objectives
  std::vector<std::string> states;           // declaration order
  std::vector<std::vector<std::string>> occ; // per clause, its occurrence states
};

Skeleton build_skeleton(const CnfFormula& f, int n_agents, bool loop_back) {
  const int n = f.n;
  const int m = static_cast<int>(f.clauses.size());

  Skeleton sk;
  sk.occ.resize(static_cast<std::size_t>(m));

  // Branch targets per spine vertex v{c-1}, c = 1..n+m.
  std::vector<std::vector<std::string>> branch(static_cast<std::size_t>(n + m));
  sk.states.push_back("v0");
  for (int k = 1; k <= n; ++k) {
    branch[static_cast<std::size_t>(k - 1)] = {lit_name(k), lit_name(-k)};
    sk.states.push_back(lit_name(k));
    sk.states.push_back(lit_name(-k));
    sk.states.push_back("v" + std::to_string(k));
  }
  for (int j = 1; j <= m; ++j) {
    for (int lit : f.clauses[static_cast<std::size_t>(j - 1)]) {
      std::string s = occ_name(j, lit);
      branch[static_cast<std::size_t>(n + j - 1)].push_back(s);
      sk.occ[static_cast<std::size_t>(j - 1)].push_back(s);
      sk.states.push_back(s);
    }
    sk.states.push_back("v" + std::to_string(n + j));
  }

  std::size_t max_branch = 1;
  for (const auto& b : branch) max_branch = std::max(max_branch, b.size());
  ojson actions = ojson::array();
  if (n + m > 0)
    for (std::size_t i = 0; i < max_branch; ++i) actions.push_back("a" + std::to_string(i));
  actions.push_back(".");

  ojson available = ojson::object();
  ojson transitions = ojson::array();
  auto idle_row = [&](const std::string& action) {
    ojson row = ojson::array();
    row.push_back(ojson::array({action}));
    for (int i = 1; i < n_agents; ++i) row.push_back(ojson::array({"."}));
    return row;
  };
  auto add_edge = [&](const std::string& from, const std::string& action,
                      const std::string& to) {
    ojson move = ojson::array();
    move.push_back(action);
    for (int i = 1; i < n_agents; ++i) move.push_back(".");
    transitions.push_back(ojson{{"from", from}, {"move", move}, {"to", to}});
  };

  for (int c = 1; c <= n + m; ++c) {
    const std::string from = "v" + std::to_string(c - 1);
    const auto& targets = branch[static_cast<std::size_t>(c - 1)];
    ojson mine = ojson::array();
    for (std::size_t i = 0; i < targets.size(); ++i) mine.push_back("a" + std::to_string(i));
    ojson row = ojson::array();
    row.push_back(mine);
    for (int i = 1; i < n_agents; ++i) row.push_back(ojson::array({"."}));
    available[from] = row;
    for (std::size_t i = 0; i < targets.size(); ++i)
      add_edge(from, "a" + std::to_string(i), targets[i]);
    const std::string join = "v" + std::to_string(c);
    for (const std::string& mid : targets) {
      available[mid] = idle_row(".");
      add_edge(mid, ".", join);
    }
  }
  const std::string last = "v" + std::to_string(n + m);
  available[last] = idle_row(".");
  add_edge(last, ".", loop_back ? "v0" : last);

  ojson j;
  j["states"] = sk.states;
  j["agents"] = n_agents;
  j["actions"] = actions;
  j["initial"] = "v0";
  j["available"] = available;
  j["transitions"] = transitions;
  sk.json = std::move(j);
  return sk;
}

// Unsafe set of the agent standing for literal `lit`: the literal's state in
// its variable column plus every occurrence of the literal in a clause column.
ojson bad_states_of(const CnfFormula& f, int lit) {
  ojson arr = ojson::array();
  arr.push_back(lit_name(lit));
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    for (int l : f.clauses[j])
      if (l == lit) arr.push_back(occ_name(static_cast<int>(j) + 1, lit));
  return arr;
}

GeneratedGame avoidance_game(const CnfFormula& f, const char* type, const char* field) {
  const int n_agents = 2 * f.n + 1;
  Skeleton sk = build_skeleton(f, n_agents, /*loop_back=*/true);
  ojson objectives = ojson::array();
  objectives.push_back(ojson{{"type", type}, {field, ojson::array()}});
  for (int k = 1; k <= f.n; ++k) {
    objectives.push_back(ojson{{"type", type}, {field, bad_states_of(f, k)}});
    objectives.push_back(ojson{{"type", type}, {field, bad_states_of(f, -k)}});
  }
  sk.json["objectives"] = objectives;
  return {parse_game(sk.json.dump()), f.n + 1};
}

}  // namespace

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long n = -1, m = -1;
  std::string body;
  bool header_seen = false;
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == 'c') continue;
    if (!header_seen) {
      std::istringstream hs(line);
      std::string p, cnf, extra;
      if (!(hs >> p >> cnf) || p != "p" || cnf != "cnf" || !(hs >> n >> m) ||
          n < 0 || m < 0 || (hs >> extra))
        raise(ErrorKind::Parse, "malformed DIMACS header: '" + line + "'");
      header_seen = true;
    } else {
      body += line;
      body += '\n';
    }
  }
  if (!header_seen) raise(ErrorKind::Parse, "missing DIMACS header");

  CnfFormula f;
  f.n = static_cast<int>(n);
  std::set<int> current;
  std::istringstream bs(body);
  std::string tok;
  while (bs >> tok) {
    long lit;
    if (!parse_int(tok, lit))
      raise(ErrorKind::Parse, "DIMACS body contains a non-integer token '" + tok + "'");
    if (lit == 0) {
      if (current.empty()) raise(ErrorKind::Parse, "DIMACS body contains an empty clause");
      f.clauses.emplace_back(current.begin(), current.end());
      current.clear();
    } else {
      if (lit < -n || lit > n)
        raise(ErrorKind::Parse, "literal " + std::to_string(lit) +
                                   " is outside the declared variable range");
      current.insert(static_cast<int>(lit));
    }
  }
  if (!current.empty())
    raise(ErrorKind::Parse, "last clause is missing its terminating 0");
  if (static_cast<long>(f.clauses.size()) != m)
    raise(ErrorKind::Parse,
         "header declares " + std::to_string(m) + " clauses but the body contains " +
             std::to_string(f.clauses.size()));
  return f;
}

GeneratedGame sat_to_reach_game(const CnfFormula& f) {
  const int m = static_cast<int>(f.clauses.size());
  const int n_agents = m + 1;
  Skeleton sk = build_skeleton(f, n_agents, /*loop_back=*/false);
  ojson objectives = ojson::array();
  objectives.push_back(ojson{{"type", "reach"}, {"target", sk.states}});
  for (int j = 1; j <= m; ++j) {
    ojson target = ojson::array();
    for (int lit : f.clauses[static_cast<std::size_t>(j - 1)]) target.push_back(lit_name(lit));
    objectives.push_back(ojson{{"type", "reach"}, {"target", target}});
  }
  sk.json["objectives"] = objectives;
  return {parse_game(sk.json.dump()), m + 1};
}

GeneratedGame sat_to_safety_game(const CnfFormula& f) {
  return avoidance_game(f, "safe", "unsafe");
}

GeneratedGame sat_to_cobuchi_game(const CnfFormula& f) {
  return avoidance_game(f, "cobuchi", "reject");
}

bool brute_force_sat(const CnfFormula& f, int max_vars) {
  if (f.n > max_vars)
    raise(ErrorKind::Usage, "formula has " + std::to_string(f.n) +
                               " variables, above the truth-table bound of " +
                               std::to_string(max_vars));
  const std::uint64_t count = 1ull << f.n;
  for (std::uint64_t a = 0; a < count; ++a) {
    bool all = true;
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int lit : clause) {
        int v = lit > 0 ? lit : -lit;
        if (((a >> (v - 1)) & 1u) == (lit > 0 ? 1u : 0u)) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace releq
