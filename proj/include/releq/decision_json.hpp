#pragma once

#include <string>

#include "releq/equilibria.hpp"
#include "releq/model.hpp"

namespace releq {

// Stable JSON rendering of a decision:
//   {"problem": ..., "answer": ..., "witness": {"stem": [names],
//    "cycle": [names], "profile": "101"} | null, "method": ..., "stats": {...}}
// Field order, witness states, and stat order are deterministic, so equal
// decisions always serialize to identical bytes.
std::string decision_to_json(const Game& g, const std::string& problem,
                             const Decision& d);

}  // namespace releq
