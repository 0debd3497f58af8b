#include "releq/game_json.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace releq {

using ojson = nlohmann::ordered_json;

namespace {

std::string move_names(const Game& g, const std::vector<int>& action_ids) {
  std::string out = "(";
  for (std::size_t i = 0; i < action_ids.size(); ++i) {
    if (i) out += ",";
    out += g.actions[static_cast<std::size_t>(action_ids[i])];
  }
  return out + ")";
}

bool string_array(const ojson& j, std::vector<std::string>& out) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!e.is_string()) return false;
    out.push_back(e.get<std::string>());
  }
  return true;
}

struct Builder {
  const ojson& root;
  std::vector<std::string>& v;  // violations
  Game g;
  std::map<std::string, int> state_id;
  std::map<std::string, int> action_id;

  Builder(const ojson& r, std::vector<std::string>& viol) : root(r), v(viol) {}

  void add(const std::string& msg) { v.push_back(msg); }

  bool basics() {
    bool ok = true;
    std::vector<std::string> sts;
    if (!root.contains("states") || !string_array(root["states"], sts) || sts.empty()) {
      add("states: must be a nonempty array of strings");
      ok = false;
    } else {
      if (sts.size() > static_cast<std::size_t>(kMaxStates)) {
        add("states: too many states (" + std::to_string(sts.size()) + " > " +
            std::to_string(kMaxStates) + ")");
        ok = false;
      } else {
        for (const auto& s : sts) {
          if (s.empty()) {
            add("states: state names must be nonempty");
            ok = false;
          } else if (state_id.count(s)) {
            add("states: duplicate state name '" + s + "'");
            ok = false;
          } else {
            state_id[s] = static_cast<int>(g.states.size());
            g.states.push_back(s);
          }
        }
      }
    }
    if (!root.contains("agents") || !root["agents"].is_number_integer() ||
        root["agents"].get<long long>() < 1 ||
        root["agents"].get<long long>() > kMaxAgents) {
      add("agents: must be an integer between 1 and " + std::to_string(kMaxAgents));
      ok = false;
    } else {
      g.n_agents = root["agents"].get<int>();
    }
    std::vector<std::string> acts;
    if (!root.contains("actions") || !string_array(root["actions"], acts) || acts.empty()) {
      add("actions: must be a nonempty array of strings");
      ok = false;
    } else {
      for (const auto& a : acts) {
        if (a.empty()) {
          add("actions: action names must be nonempty");
          ok = false;
        } else if (action_id.count(a)) {
          add("actions: duplicate action name '" + a + "'");
          ok = false;
        } else {
          action_id[a] = static_cast<int>(g.actions.size());
          g.actions.push_back(a);
        }
      }
    }
    return ok;
  }

  bool availability() {
    if (!root.contains("available") || !root["available"].is_object()) {
      add("available: must be an object mapping states to per-agent action lists");
      return false;
    }
    const auto& av = root["available"];
    bool ok = true;
    for (auto it = av.begin(); it != av.end(); ++it) {
      if (!state_id.count(it.key())) {
        add("available: unknown state '" + it.key() + "'");
        ok = false;
      }
    }
    g.avail.assign(g.states.size(), {});
    for (int s = 0; s < g.state_count(); ++s) {
      const std::string& name = g.states[static_cast<std::size_t>(s)];
      if (!av.contains(name)) {
        add("available: missing entry for state '" + name + "'");
        ok = false;
        continue;
      }
      const auto& row = av[name];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(g.n_agents)) {
        add("available: entry for state '" + name + "' must list actions for all " +
            std::to_string(g.n_agents) + " agents");
        ok = false;
        continue;
      }
      auto& dst = g.avail[static_cast<std::size_t>(s)];
      dst.resize(static_cast<std::size_t>(g.n_agents));
      for (int i = 0; i < g.n_agents; ++i) {
        std::vector<std::string> names;
        if (!string_array(row[static_cast<std::size_t>(i)], names) || names.empty()) {
          add("available: actions for agent " + std::to_string(i + 1) + " at state '" +
              name + "' must be a nonempty array of action names");
          ok = false;
          continue;
        }
        std::set<int> ids;
        for (const auto& a : names) {
          auto f = action_id.find(a);
          if (f == action_id.end()) {
            add("available: unknown action '" + a + "' at state '" + name + "'");
            ok = false;
          } else if (!ids.insert(f->second).second) {
            add("available: duplicate action '" + a + "' for agent " +
                std::to_string(i + 1) + " at state '" + name + "'");
            ok = false;
          }
        }
        auto& lst = dst[static_cast<std::size_t>(i)];
        lst.assign(ids.begin(), ids.end());
        std::sort(lst.begin(), lst.end(), [&](int x, int y) {
          return g.actions[static_cast<std::size_t>(x)] < g.actions[static_cast<std::size_t>(y)];
        });
      }
    }
    return ok;
  }

  void transitions() {
    if (!root.contains("transitions") || !root["transitions"].is_array()) {
      add("transitions: must be an array of {from, move, to} objects");
      return;
    }
    std::uint64_t total = 0;
    for (int s = 0; s < g.state_count(); ++s) {
      std::uint64_t rows = 1;
      for (const auto& av : g.avail[static_cast<std::size_t>(s)]) rows *= av.size();
      total += rows;
      if (total > kMaxMoveEntries) {
        add("transitions: table too large (more than " +
            std::to_string(kMaxMoveEntries) + " rows)");
        return;
      }
    }
    g.tr.assign(g.states.size(), {});
    std::vector<std::vector<int>> seen(g.states.size());
    for (int s = 0; s < g.state_count(); ++s) {
      std::uint64_t rows = 1;
      for (const auto& av : g.avail[static_cast<std::size_t>(s)]) rows *= av.size();
      g.tr[static_cast<std::size_t>(s)].assign(rows, -1);
      seen[static_cast<std::size_t>(s)].assign(rows, 0);
    }
    bool ok = true;
    for (const auto& e : root["transitions"]) {
      if (!e.is_object() || !e.contains("from") || !e.contains("move") ||
          !e.contains("to") || !e["from"].is_string() || !e["to"].is_string()) {
        add("transitions: each entry must be an object with from, move and to");
        ok = false;
        continue;
      }
      auto fs = state_id.find(e["from"].get<std::string>());
      auto ts = state_id.find(e["to"].get<std::string>());
      if (fs == state_id.end()) {
        add("transitions: unknown state '" + e["from"].get<std::string>() + "'");
        ok = false;
        continue;
      }
      if (ts == state_id.end()) {
        add("transitions: unknown state '" + e["to"].get<std::string>() + "'");
        ok = false;
        continue;
      }
      std::vector<std::string> mv;
      if (!string_array(e["move"], mv) || mv.size() != static_cast<std::size_t>(g.n_agents)) {
        add("transitions: move at " + g.states[static_cast<std::size_t>(fs->second)] +
            " must list one action per agent");
        ok = false;
        continue;
      }
      std::vector<int> ids;
      bool known = true;
      for (const auto& a : mv) {
        auto f = action_id.find(a);
        if (f == action_id.end()) {
          add("transitions: unknown action '" + a + "'");
          known = false;
        } else {
          ids.push_back(f->second);
        }
      }
      if (!known) {
        ok = false;
        continue;
      }
      std::size_t rank = 0;
      bool legal = true;
      for (int i = 0; i < g.n_agents && legal; ++i) {
        const auto& av = g.avail[static_cast<std::size_t>(fs->second)][static_cast<std::size_t>(i)];
        auto f = std::find(av.begin(), av.end(), ids[static_cast<std::size_t>(i)]);
        if (f == av.end()) legal = false;
        else rank = rank * av.size() + static_cast<std::size_t>(f - av.begin());
      }
      if (!legal) {
        add("transitions: move " + move_names(g, ids) + " not available at " +
            g.states[static_cast<std::size_t>(fs->second)]);
        ok = false;
        continue;
      }
      if (seen[static_cast<std::size_t>(fs->second)][rank]++) {
        add("transitions: duplicate transition at " +
            g.states[static_cast<std::size_t>(fs->second)] + " for move " +
            move_names(g, ids));
        ok = false;
        continue;
      }
      g.tr[static_cast<std::size_t>(fs->second)][rank] = ts->second;
    }
    for (int s = 0; s < g.state_count(); ++s) {
      for (std::size_t r = 0; r < g.tr[static_cast<std::size_t>(s)].size(); ++r) {
        if (!seen[static_cast<std::size_t>(s)][r]) {
          add("transitions: missing transition at " + g.states[static_cast<std::size_t>(s)] +
              " for move " + move_names(g, g.decode_move(s, r)));
          ok = false;
        }
      }
    }
    (void)ok;
  }

  std::optional<std::uint64_t> state_set(const ojson& j, const std::string& ctx) {
    std::vector<std::string> names;
    if (!string_array(j, names)) {
      add(ctx + ": must be an array of state names");
      return std::nullopt;
    }
    std::uint64_t mask = 0;
    bool ok = true;
    for (const auto& s : names) {
      auto f = state_id.find(s);
      if (f == state_id.end()) {
        add(ctx + ": unknown state '" + s + "'");
        ok = false;
      } else {
        mask |= 1ull << f->second;
      }
    }
    if (!ok) return std::nullopt;
    return mask;
  }

  void objective(const ojson& j, int idx) {
    std::string ctx = "objectives[" + std::to_string(idx) + "]";
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
      add(ctx + ": must be an object with a type field");
      return;
    }
    std::string type = j["type"].get<std::string>();
    Objective o;
    auto set_field = [&](ObjectiveKind k, const char* field) {
      o.kind = k;
      if (!j.contains(field)) {
        add(ctx + ": missing field '" + field + "'");
        return;
      }
      if (auto m = state_set(j[field], ctx + "." + field)) o.set = *m;
    };
    if (type == "reach") set_field(ObjectiveKind::Reach, "target");
    else if (type == "safe") set_field(ObjectiveKind::Safe, "unsafe");
    else if (type == "buchi") set_field(ObjectiveKind::Buchi, "accept");
    else if (type == "cobuchi") set_field(ObjectiveKind::CoBuchi, "reject");
    else if (type == "parity") {
      o.kind = ObjectiveKind::Parity;
      if (!j.contains("priority") || !j["priority"].is_object()) {
        add(ctx + ": parity objective needs a priority object");
        return;
      }
      o.priority.assign(g.states.size(), -1);
      for (auto it = j["priority"].begin(); it != j["priority"].end(); ++it) {
        auto f = state_id.find(it.key());
        if (f == state_id.end()) {
          add(ctx + ".priority: unknown state '" + it.key() + "'");
          continue;
        }
        if (!it.value().is_number_integer() || it.value().get<long long>() < 0) {
          add(ctx + ".priority: priority of '" + it.key() + "' must be a nonnegative integer");
          continue;
        }
        o.priority[static_cast<std::size_t>(f->second)] = it.value().get<int>();
      }
      for (int s = 0; s < g.state_count(); ++s)
        if (o.priority[static_cast<std::size_t>(s)] < 0)
          add(ctx + ".priority: missing priority for state '" +
              g.states[static_cast<std::size_t>(s)] + "'");
    } else if (type == "muller") {
      o.kind = ObjectiveKind::Muller;
      if (!j.contains("colors") || !j["colors"].is_object()) {
        add(ctx + ": muller objective needs a colors object");
        return;
      }
      std::map<std::string, int> colour_of;  // name -> id, assigned in name order
      std::vector<std::string> by_state(g.states.size());
      bool ok = true;
      for (auto it = j["colors"].begin(); it != j["colors"].end(); ++it) {
        auto f = state_id.find(it.key());
        if (f == state_id.end()) {
          add(ctx + ".colors: unknown state '" + it.key() + "'");
          ok = false;
          continue;
        }
        if (!it.value().is_string() || it.value().get<std::string>().empty()) {
          add(ctx + ".colors: colour of '" + it.key() + "' must be a nonempty string");
          ok = false;
          continue;
        }
        by_state[static_cast<std::size_t>(f->second)] = it.value().get<std::string>();
      }
      for (int s = 0; s < g.state_count(); ++s) {
        if (by_state[static_cast<std::size_t>(s)].empty()) {
          add(ctx + ".colors: missing colour for state '" +
              g.states[static_cast<std::size_t>(s)] + "'");
          ok = false;
        } else {
          colour_of[by_state[static_cast<std::size_t>(s)]] = 0;
        }
      }
      if (!ok) return;
      int next = 0;
      for (auto& [name, id] : colour_of) {
        id = next++;
        o.colour_names.push_back(name);
      }
      o.colour.resize(g.states.size());
      for (int s = 0; s < g.state_count(); ++s)
        o.colour[static_cast<std::size_t>(s)] = colour_of[by_state[static_cast<std::size_t>(s)]];
      if (!j.contains("family") || !j["family"].is_array()) {
        add(ctx + ": muller objective needs a family array");
        return;
      }
      std::set<std::uint64_t> fam;
      for (const auto& member : j["family"]) {
        std::vector<std::string> names;
        if (!string_array(member, names)) {
          add(ctx + ".family: each member must be an array of colour names");
          continue;
        }
        std::uint64_t m = 0;
        bool good = true;
        for (const auto& c : names) {
          auto f = colour_of.find(c);
          if (f == colour_of.end()) {
            add(ctx + ".family: unknown colour '" + c + "'");
            good = false;
          } else {
            m |= 1ull << f->second;
          }
        }
        if (good) fam.insert(m);
      }
      o.family.assign(fam.begin(), fam.end());
    } else {
      add(ctx + ": unknown objective type '" + type + "'");
      return;
    }
    if (idx < static_cast<int>(g.objectives.size()))
      g.objectives[static_cast<std::size_t>(idx)] = std::move(o);
  }

  void objectives_and_initial() {
    if (!root.contains("objectives") || !root["objectives"].is_array()) {
      add("objectives: must be an array with one objective per agent");
    } else if (root["objectives"].size() != static_cast<std::size_t>(g.n_agents)) {
      add("objectives: expected " + std::to_string(g.n_agents) + " entries, got " +
          std::to_string(root["objectives"].size()));
    } else {
      g.objectives.resize(static_cast<std::size_t>(g.n_agents));
      for (int i = 0; i < g.n_agents; ++i)
        objective(root["objectives"][static_cast<std::size_t>(i)], i);
    }
    if (root.contains("initial")) {
      if (!root["initial"].is_string() || !state_id.count(root["initial"].get<std::string>()))
        add("initial: must name a declared state");
      else
        g.initial = state_id[root["initial"].get<std::string>()];
    }
  }
};

}  // namespace

ValidationResult validate_game_json(const std::string& text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    raise(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  ValidationResult res;
  if (!root.is_object()) {
    res.violations.push_back("top-level value must be an object");
    return res;
  }
  Builder b(root, res.violations);
  if (!b.basics()) return res;
  if (!b.availability()) return res;
  b.transitions();
  b.objectives_and_initial();
  if (!res.violations.empty()) return res;
  b.g.finalize_derived();
  res.game = std::move(b.g);
  return res;
}

Game parse_game(const std::string& text) {
  auto res = validate_game_json(text);
  if (!res.game) {
    std::string msg = "invalid game";
    for (const auto& v : res.violations) msg += "; " + v;
    raise(ErrorKind::Validation, msg);
  }
  return std::move(*res.game);
}

Game parse_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Usage, "cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

std::string game_to_json(const Game& g) {
  ojson root;
  root["states"] = g.states;
  root["agents"] = g.n_agents;
  root["actions"] = g.actions;
  if (g.initial)
    root["initial"] = g.states[static_cast<std::size_t>(*g.initial)];
  ojson av = ojson::object();
  for (int s = 0; s < g.state_count(); ++s) {
    ojson per_agent = ojson::array();
    for (const auto& lst : g.avail[static_cast<std::size_t>(s)]) {
      ojson names = ojson::array();
      for (int a : lst) names.push_back(g.actions[static_cast<std::size_t>(a)]);
      per_agent.push_back(names);
    }
    av[g.states[static_cast<std::size_t>(s)]] = per_agent;
  }
  root["available"] = av;
  ojson trs = ojson::array();
  for (int s = 0; s < g.state_count(); ++s) {
    for (std::size_t r = 0; r < g.move_count(s); ++r) {
      ojson e;
      e["from"] = g.states[static_cast<std::size_t>(s)];
      ojson mv = ojson::array();
      for (int a : g.decode_move(s, r)) mv.push_back(g.actions[static_cast<std::size_t>(a)]);
      e["move"] = mv;
      e["to"] = g.states[static_cast<std::size_t>(g.tr[static_cast<std::size_t>(s)][r])];
      trs.push_back(e);
    }
  }
  root["transitions"] = trs;
  ojson objs = ojson::array();
  auto set_names = [&](std::uint64_t mask) {
    ojson arr = ojson::array();
    for (int s = 0; s < g.state_count(); ++s)
      if ((mask >> s) & 1) arr.push_back(g.states[static_cast<std::size_t>(s)]);
    return arr;
  };
  for (const auto& o : g.objectives) {
    ojson j;
    j["type"] = objective_kind_name(o.kind);
    switch (o.kind) {
      case ObjectiveKind::Reach: j["target"] = set_names(o.set); break;
      case ObjectiveKind::Safe: j["unsafe"] = set_names(o.set); break;
      case ObjectiveKind::Buchi: j["accept"] = set_names(o.set); break;
      case ObjectiveKind::CoBuchi: j["reject"] = set_names(o.set); break;
      case ObjectiveKind::Parity: {
        ojson p = ojson::object();
        for (int s = 0; s < g.state_count(); ++s)
          p[g.states[static_cast<std::size_t>(s)]] = o.priority[static_cast<std::size_t>(s)];
        j["priority"] = p;
        break;
      }
      case ObjectiveKind::Muller: {
        ojson c = ojson::object();
        for (int s = 0; s < g.state_count(); ++s)
          c[g.states[static_cast<std::size_t>(s)]] =
              o.colour_names[static_cast<std::size_t>(o.colour[static_cast<std::size_t>(s)])];
        j["colors"] = c;
        ojson fam = ojson::array();
        for (std::uint64_t m : o.family) {
          ojson member = ojson::array();
          for (std::size_t ci = 0; ci < o.colour_names.size(); ++ci)
            if ((m >> ci) & 1) member.push_back(o.colour_names[ci]);
          fam.push_back(member);
        }
        j["family"] = fam;
        break;
      }
    }
    objs.push_back(j);
  }
  root["objectives"] = objs;
  return root.dump(2) + "\n";
}

}  // namespace releq
