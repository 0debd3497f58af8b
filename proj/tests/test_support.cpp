#include "test_support.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace tsup {

using ojson = nlohmann::ordered_json;
using releq::Game;
using releq::ObjectiveKind;

std::string turn_based_json(const std::vector<TbState>& states, int n_agents,
                            const std::string& objectives_json,
                            const std::string& initial) {
  ojson root;
  ojson st = ojson::array();
  for (const auto& s : states) st.push_back(s.name);
  root["states"] = st;
  root["agents"] = n_agents;
  std::set<std::string> acts{"."};
  for (const auto& s : states)
    for (const auto& t : s.targets) acts.insert(t);
  root["actions"] = std::vector<std::string>(acts.begin(), acts.end());
  root["initial"] = initial;
  ojson av = ojson::object();
  ojson trs = ojson::array();
  for (const auto& s : states) {
    ojson per_agent = ojson::array();
    for (int i = 1; i <= n_agents; ++i) {
      if (i == s.owner) per_agent.push_back(s.targets);
      else per_agent.push_back(std::vector<std::string>{"."});
    }
    av[s.name] = per_agent;
    for (const auto& t : s.targets) {
      ojson e;
      e["from"] = s.name;
      std::vector<std::string> mv(static_cast<std::size_t>(n_agents), ".");
      mv[static_cast<std::size_t>(s.owner - 1)] = t;
      e["move"] = mv;
      e["to"] = t;
      trs.push_back(e);
    }
  }
  root["available"] = av;
  root["transitions"] = trs;
  root["objectives"] = ojson::parse(objectives_json);
  return root.dump(2);
}

Game turn_based_game(const std::vector<TbState>& states, int n_agents,
                     const std::string& objectives_json,
                     const std::string& initial) {
  return releq::parse_game(turn_based_json(states, n_agents, objectives_json, initial));
}

Game random_game(Rng& rng, int n_states, int n_agents, int max_act,
                 ObjectiveKind kind) {
  ojson root;
  std::vector<std::string> st;
  for (int s = 0; s < n_states; ++s) st.push_back("s" + std::to_string(s));
  root["states"] = st;
  root["agents"] = n_agents;
  std::vector<std::string> acts;
  for (int a = 0; a < max_act; ++a) acts.push_back(std::string(1, static_cast<char>('a' + a)));
  root["actions"] = acts;
  root["initial"] = "s0";
  ojson av = ojson::object();
  ojson trs = ojson::array();
  for (int s = 0; s < n_states; ++s) {
    ojson per_agent = ojson::array();
    std::vector<std::vector<std::string>> lists;
    for (int i = 0; i < n_agents; ++i) {
      int sz = 1 + rng.below(max_act);
      // Random size-sz subset of actions.
      std::vector<int> ids;
      for (int a = 0; a < max_act; ++a) ids.push_back(a);
      for (int a = 0; a < sz; ++a) std::swap(ids[a], ids[a + rng.below(max_act - a)]);
      ids.resize(static_cast<std::size_t>(sz));
      std::sort(ids.begin(), ids.end());
      std::vector<std::string> names;
      for (int a : ids) names.push_back(acts[static_cast<std::size_t>(a)]);
      per_agent.push_back(names);
      lists.push_back(names);
    }
    av[st[static_cast<std::size_t>(s)]] = per_agent;
    // Odometer over the lists, agent 0 outermost.
    std::vector<std::size_t> idx(static_cast<std::size_t>(n_agents), 0);
    for (;;) {
      ojson e;
      e["from"] = st[static_cast<std::size_t>(s)];
      std::vector<std::string> mv;
      for (int i = 0; i < n_agents; ++i)
        mv.push_back(lists[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]]);
      e["move"] = mv;
      e["to"] = st[static_cast<std::size_t>(rng.below(n_states))];
      trs.push_back(e);
      int i = n_agents - 1;
      while (i >= 0) {
        if (++idx[static_cast<std::size_t>(i)] < lists[static_cast<std::size_t>(i)].size()) break;
        idx[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  root["available"] = av;
  root["transitions"] = trs;
  ojson objs = ojson::array();
  auto random_state_set = [&]() {
    ojson arr = ojson::array();
    for (int s = 0; s < n_states; ++s)
      if (rng.coin()) arr.push_back(st[static_cast<std::size_t>(s)]);
    return arr;
  };
  for (int i = 0; i < n_agents; ++i) {
    ojson o;
    switch (kind) {
      case ObjectiveKind::Reach:
        o["type"] = "reach";
        o["target"] = random_state_set();
        break;
      case ObjectiveKind::Safe:
        o["type"] = "safe";
        o["unsafe"] = random_state_set();
        break;
      case ObjectiveKind::Buchi:
        o["type"] = "buchi";
        o["accept"] = random_state_set();
        break;
      case ObjectiveKind::CoBuchi:
        o["type"] = "cobuchi";
        o["reject"] = random_state_set();
        break;
      case ObjectiveKind::Parity: {
        ojson p = ojson::object();
        for (int s = 0; s < n_states; ++s)
          p[st[static_cast<std::size_t>(s)]] = rng.below(5);
        o["type"] = "parity";
        o["priority"] = p;
        break;
      }
      case ObjectiveKind::Muller: {
        int n_col = 1 + rng.below(3);
        ojson c = ojson::object();
        std::set<std::string> used;
        for (int s = 0; s < n_states; ++s) {
          std::string col = "c" + std::to_string(rng.below(n_col));
          c[st[static_cast<std::size_t>(s)]] = col;
          used.insert(col);
        }
        std::vector<std::string> cols(used.begin(), used.end());
        ojson fam = ojson::array();
        int subsets = 1 << cols.size();
        for (int m = 1; m < subsets; ++m) {
          if (!rng.coin()) continue;
          ojson member = ojson::array();
          for (std::size_t ci = 0; ci < cols.size(); ++ci)
            if ((m >> ci) & 1) member.push_back(cols[ci]);
          fam.push_back(member);
        }
        o["type"] = "muller";
        o["colors"] = c;
        o["family"] = fam;
        break;
      }
    }
    objs.push_back(o);
  }
  root["objectives"] = objs;
  return releq::parse_game(root.dump());
}

releq::Lasso lasso_of(const Game& g, const std::vector<std::string>& stem,
                      const std::vector<std::string>& cycle) {
  releq::Lasso l;
  for (const auto& s : stem) l.stem.push_back(g.state_id(s));
  for (const auto& s : cycle) l.cycle.push_back(g.state_id(s));
  return l;
}

}  // namespace tsup
