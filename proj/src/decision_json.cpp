#include "releq/decision_json.hpp"

#include "json.hpp"

namespace releq {

using ojson = nlohmann::ordered_json;

std::string decision_to_json(const Game& g, const std::string& problem,
                             const Decision& d) {
  ojson j;
  j["problem"] = problem;
  j["answer"] = d.yes;
  if (d.witness) {
    ojson w;
    ojson stem = ojson::array();
    for (int s : d.witness->stem) stem.push_back(g.states[static_cast<std::size_t>(s)]);
    ojson cycle = ojson::array();
    for (int s : d.witness->cycle) cycle.push_back(g.states[static_cast<std::size_t>(s)]);
    w["stem"] = stem;
    w["cycle"] = cycle;
    w["profile"] = d.profile ? d.profile->to_string() : "";
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["method"] = d.method;
  ojson stats = ojson::object();
  for (const auto& [name, value] : d.stats) stats[name] = value;
  j["stats"] = stats;
  return j.dump(2);
}

}  // namespace releq
