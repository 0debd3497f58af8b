#include "releq/releq.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include "json.hpp"
#include "releq/decision_json.hpp"
#include "releq/equilibria.hpp"
#include "releq/game_json.hpp"
#include "releq/model.hpp"
#include "releq/reductions.hpp"
#include "releq/suspect.hpp"

struct releq_game {
  releq::Game g;
};

namespace {

thread_local std::string t_last_error;

int code_of(releq::ErrorKind k) {
  switch (k) {
    case releq::ErrorKind::Parse: return RELEQ_PARSE;
    case releq::ErrorKind::Validation: return RELEQ_VALIDATION;
    case releq::ErrorKind::Budget: return RELEQ_BUDGET;
    case releq::ErrorKind::Usage: return RELEQ_USAGE;
    case releq::ErrorKind::Internal: return RELEQ_INTERNAL;
  }
  return RELEQ_INTERNAL;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const releq::Error& e) {
    t_last_error = e.what();
    return code_of(e.kind);
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return RELEQ_INTERNAL;
  } catch (...) {
    t_last_error = "unidentified failure";
    return RELEQ_INTERNAL;
  }
}

int usage(const std::string& msg) {
  t_last_error = msg;
  return RELEQ_USAGE;
}

int give_string(const std::string& s, char** out) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) {
    t_last_error = "out of memory";
    return RELEQ_INTERNAL;
  }
  std::memcpy(p, s.c_str(), s.size() + 1);
  *out = p;
  return RELEQ_OK;
}

releq::DecisionOptions options_of(const releq_options* o, const releq::Game& g) {
  releq::DecisionOptions opts;
  if (o == nullptr) return opts;
  if (o->use_lar != 0) opts.backend = releq::Backend::Lar;
  if (o->workers > 0) opts.workers = o->workers;
  if (o->oracle_budget > 0)
    opts.oracle_budget = static_cast<std::uint64_t>(o->oracle_budget);
  if (o->stem_bound > 0 || o->cycle_bound > 0) {
    releq::SearchBounds b = releq::default_bounds(g);
    if (o->stem_bound > 0) b.stem = static_cast<std::size_t>(o->stem_bound);
    if (o->cycle_bound > 0) b.cycle = static_cast<std::size_t>(o->cycle_bound);
    opts.bounds = b;
  }
  return opts;
}

}  // namespace

extern "C" {

const char* releq_version(void) { return "0.1.0"; }

const char* releq_last_error(void) { return t_last_error.c_str(); }

int releq_game_parse(const char* json_text, releq_game** out) {
  if (json_text == nullptr || out == nullptr) return usage("null argument");
  return guarded([&] {
    auto* h = new releq_game{releq::parse_game(json_text)};
    *out = h;
    return RELEQ_OK;
  });
}

int releq_game_load(const char* path, releq_game** out) {
  if (path == nullptr || out == nullptr) return usage("null argument");
  return guarded([&] {
    auto* h = new releq_game{releq::parse_game_file(path)};
    *out = h;
    return RELEQ_OK;
  });
}

void releq_game_free(releq_game* game) { delete game; }

int releq_game_to_json(const releq_game* game, char** out_text) {
  if (game == nullptr || out_text == nullptr) return usage("null argument");
  return guarded([&] { return give_string(releq::game_to_json(game->g), out_text); });
}

int releq_game_check(const char* json_text, char** out_report) {
  if (json_text == nullptr || out_report == nullptr) return usage("null argument");
  return guarded([&] {
    releq::ValidationResult r = releq::validate_game_json(json_text);
    nlohmann::ordered_json j;
    j["valid"] = r.game.has_value();
    if (!r.game.has_value()) j["violations"] = r.violations;
    return give_string(j.dump(2), out_report);
  });
}

int releq_game_agent_count(const releq_game* game, int* out) {
  if (game == nullptr || out == nullptr) return usage("null argument");
  *out = game->g.n_agents;
  return RELEQ_OK;
}

int releq_game_state_count(const releq_game* game, int* out) {
  if (game == nullptr || out == nullptr) return usage("null argument");
  *out = game->g.state_count();
  return RELEQ_OK;
}

int releq_game_state_id(const releq_game* game, const char* name, int* out) {
  if (game == nullptr || name == nullptr || out == nullptr)
    return usage("null argument");
  int id = game->g.state_id(name);
  if (id < 0) return usage("unknown state '" + std::string(name) + "'");
  *out = id;
  return RELEQ_OK;
}

int releq_game_initial(const releq_game* game, int* out) {
  if (game == nullptr || out == nullptr) return usage("null argument");
  *out = game->g.initial.value_or(-1);
  return RELEQ_OK;
}

int releq_arena_json(const releq_game* game, int source, char** out_text) {
  if (game == nullptr || out_text == nullptr) return usage("null argument");
  return guarded([&] {
    if (source < 0 || source >= game->g.state_count())
      return usage("source state id out of range");
    releq::SuspectArena a = releq::build_suspect_arena(game->g, source);
    return give_string(releq::arena_to_json(game->g, a), out_text);
  });
}

int releq_cne(const releq_game* game, int source, const char* lower_bits,
              const char* upper_bits, const releq_options* opts, char** out_json) {
  if (game == nullptr || lower_bits == nullptr || upper_bits == nullptr ||
      out_json == nullptr)
    return usage("null argument");
  return guarded([&] {
    releq::WinnerProfile lower = releq::WinnerProfile::from_string(lower_bits);
    releq::WinnerProfile upper = releq::WinnerProfile::from_string(upper_bits);
    releq::Decision d = releq::constrained_ne_exists(game->g, source, lower, upper,
                                                     options_of(opts, game->g));
    return give_string(releq::decision_to_json(game->g, "cne", d), out_json);
  });
}

int releq_swdp(const releq_game* game, int source, int threshold,
               int use_scc_method, const releq_options* opts, char** out_json) {
  if (game == nullptr || out_json == nullptr) return usage("null argument");
  return guarded([&] {
    releq::DecisionOptions o = options_of(opts, game->g);
    releq::Decision d = use_scc_method != 0
                            ? releq::swdp_buchi(game->g, source, threshold, o)
                            : releq::swdp(game->g, source, threshold, o);
    return give_string(releq::decision_to_json(game->g, "swdp", d), out_json);
  });
}

int releq_podp(const releq_game* game, int source, int use_count_method,
               const releq_options* opts, char** out_json) {
  if (game == nullptr || out_json == nullptr) return usage("null argument");
  return guarded([&] {
    releq::DecisionOptions o = options_of(opts, game->g);
    releq::Decision d = use_count_method != 0
                            ? releq::podp_count_variant(game->g, source, o)
                            : releq::podp(game->g, source, o);
    return give_string(releq::decision_to_json(game->g, "podp", d), out_json);
  });
}

int releq_reduce_sat(const char* dimacs_text, const char* objective,
                     char** out_game_json, int* out_threshold) {
  if (dimacs_text == nullptr || objective == nullptr || out_game_json == nullptr ||
      out_threshold == nullptr)
    return usage("null argument");
  return guarded([&] {
    releq::CnfFormula f = releq::parse_dimacs(dimacs_text);
    std::string kind = objective;
    releq::GeneratedGame gg;
    if (kind == "reach") gg = releq::sat_to_reach_game(f);
    else if (kind == "safety") gg = releq::sat_to_safety_game(f);
    else if (kind == "cobuchi") gg = releq::sat_to_cobuchi_game(f);
    else return usage("objective must be reach, safety, or cobuchi");
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(releq::game_to_json(gg.game));
    j["threshold"] = gg.threshold;
    *out_threshold = gg.threshold;
    return give_string(j.dump(2), out_game_json);
  });
}

void releq_string_free(char* text) { std::free(text); }

}  // extern "C"
