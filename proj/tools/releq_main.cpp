#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "releq/releq.h"

namespace {

// Exit codes: 0 = a decision/report was produced (the answer itself is in the
// JSON), 2 = input or validation problem, 3 = work budget exhausted,
// 1 = internal failure.
int exit_code(int status) {
  switch (status) {
    case RELEQ_OK: return 0;
    case RELEQ_BUDGET: return 3;
    case RELEQ_INTERNAL: return 1;
    default: return 2;
  }
}

int report_failure(int status) {
  std::cerr << "error: " << releq_last_error() << "\n";
  return exit_code(status);
}

struct GameGuard {
  releq_game* g = nullptr;
  ~GameGuard() { releq_game_free(g); }
};

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { releq_string_free(s); }
};

bool read_file(const std::string& path, std::string& out, std::string& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err = "cannot open '" + path + "'";
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

// Options shared by every decision subcommand.
struct DecisionArgs {
  std::string game_path;
  std::string state;
  std::string lower;
  std::string upper;
  int threshold = 0;
  std::string method;
  int workers = 0;
  long long stem_bound = 0;
  long long cycle_bound = 0;
  long long oracle_budget = 0;
};

void add_common(CLI::App* cmd, DecisionArgs& a) {
  cmd->add_option("game", a.game_path, "game description file")->required();
  cmd->add_option("--state", a.state,
                  "start state name (default: the game's initial state)");
  cmd->add_option("--workers", a.workers,
                  "parallel profile checks (default: $RELEQ_WORKERS or 1)");
  cmd->add_option("--stem-bound", a.stem_bound, "witness stem length bound");
  cmd->add_option("--cycle-bound", a.cycle_bound, "witness cycle length bound");
  cmd->add_option("--oracle-budget", a.oracle_budget,
                  "node budget for the record-based oracle");
}

int resolve_source(releq_game* g, const std::string& state, int& source) {
  if (!state.empty()) return releq_game_state_id(g, state.c_str(), &source);
  releq_game_initial(g, &source);
  if (source < 0) {
    std::cerr << "error: the game declares no initial state; pass --state\n";
    return -1;
  }
  return RELEQ_OK;
}

int run_decision(const DecisionArgs& a, const std::string& problem, bool use_lar) {
  GameGuard game;
  int status = releq_game_load(a.game_path.c_str(), &game.g);
  if (status != RELEQ_OK) return report_failure(status);

  int source = -1;
  status = resolve_source(game.g, a.state, source);
  if (status < 0) return 2;
  if (status != RELEQ_OK) return report_failure(status);

  releq_options opts = {};
  opts.use_lar = use_lar ? 1 : 0;
  opts.workers = a.workers;
  opts.oracle_budget = a.oracle_budget;
  opts.stem_bound = a.stem_bound;
  opts.cycle_bound = a.cycle_bound;

  StringGuard out;
  if (problem == "cne") {
    status = releq_cne(game.g, source, a.lower.c_str(), a.upper.c_str(), &opts, &out.s);
  } else if (problem == "swdp") {
    status = releq_swdp(game.g, source, a.threshold, a.method == "buchi-scc" ? 1 : 0,
                        &opts, &out.s);
  } else {
    status = releq_podp(game.g, source, a.method == "count" ? 1 : 0, &opts, &out.s);
  }
  if (status != RELEQ_OK) return report_failure(status);
  std::cout << out.s << "\n";
  return 0;
}

// Registers cne/swdp/podp under `parent`; `use_lar` switches the solver
// back-end for all three.
void add_decision_commands(CLI::App* parent, bool use_lar,
                           std::vector<std::unique_ptr<DecisionArgs>>& storage,
                           int& result) {
  {
    storage.push_back(std::make_unique<DecisionArgs>());
    DecisionArgs* a = storage.back().get();
    CLI::App* cmd = parent->add_subcommand(
        "cne", "decide whether a stable play exists in a payoff window");
    add_common(cmd, *a);
    cmd->add_option("--lower", a->lower,
                    "least acceptable payoff, one 0/1 per agent, agent 1 leftmost")
        ->required();
    cmd->add_option("--upper", a->upper,
                    "greatest acceptable payoff, one 0/1 per agent")
        ->required();
    cmd->callback([a, use_lar, &result] { result = run_decision(*a, "cne", use_lar); });
  }
  {
    storage.push_back(std::make_unique<DecisionArgs>());
    DecisionArgs* a = storage.back().get();
    a->method = "generic";
    CLI::App* cmd = parent->add_subcommand(
        "swdp", "decide whether a stable play reaches a winner-count threshold");
    add_common(cmd, *a);
    cmd->add_option("--threshold", a->threshold, "required number of winners")
        ->required();
    cmd->add_option("--method", a->method, "generic | buchi-scc")
        ->check(CLI::IsMember({"generic", "buchi-scc"}));
    cmd->callback([a, use_lar, &result] { result = run_decision(*a, "swdp", use_lar); });
  }
  {
    storage.push_back(std::make_unique<DecisionArgs>());
    DecisionArgs* a = storage.back().get();
    a->method = "exact";
    CLI::App* cmd = parent->add_subcommand(
        "podp", "decide whether a stable play has a maximal payoff");
    add_common(cmd, *a);
    cmd->add_option("--method", a->method, "exact | count")
        ->check(CLI::IsMember({"exact", "count"}));
    cmd->callback([a, use_lar, &result] { result = run_decision(*a, "podp", use_lar); });
  }
}

int run_check(const std::string& game_path, const std::string& arena_out,
              const std::string& state) {
  std::string text, err;
  if (!read_file(game_path, text, err)) {
    std::cerr << "error: " << err << "\n";
    return 2;
  }
  StringGuard report;
  int status = releq_game_check(text.c_str(), &report.s);
  if (status != RELEQ_OK) return report_failure(status);
  std::cout << report.s << "\n";
  if (arena_out.empty()) return 0;

  GameGuard game;
  status = releq_game_parse(text.c_str(), &game.g);
  if (status != RELEQ_OK) {
    std::cerr << "error: cannot export the arena of an invalid game\n";
    return 2;
  }
  int source = -1;
  status = resolve_source(game.g, state, source);
  if (status < 0) return 2;
  if (status != RELEQ_OK) return report_failure(status);
  StringGuard arena;
  status = releq_arena_json(game.g, source, &arena.s);
  if (status != RELEQ_OK) return report_failure(status);
  std::ofstream out(arena_out, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << arena_out << "'\n";
    return 2;
  }
  out << arena.s << "\n";
  return 0;
}

int run_reduce(const std::string& cnf_path, const std::string& objective,
               const std::string& out_path) {
  std::string text, err;
  if (!read_file(cnf_path, text, err)) {
    std::cerr << "error: " << err << "\n";
    return 2;
  }
  StringGuard game;
  int threshold = 0;
  int status = releq_reduce_sat(text.c_str(), objective.c_str(), &game.s, &threshold);
  if (status != RELEQ_OK) return report_failure(status);
  if (out_path.empty()) {
    std::cout << game.s << "\n";
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return 2;
  }
  out << game.s << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pure equilibrium decisions for finite concurrent games"};
  app.set_version_flag("--version", releq_version());
  app.require_subcommand(1);

  int result = 0;
  std::vector<std::unique_ptr<DecisionArgs>> storage;

  // check
  std::string check_game, check_arena_out, check_state;
  CLI::App* check = app.add_subcommand("check", "validate a game description");
  check->add_option("game", check_game, "game description file")->required();
  check->add_option("--arena-out", check_arena_out,
                    "also write the deviation arena to this file");
  check->add_option("--state", check_state, "arena start state name");
  check->callback(
      [&] { result = run_check(check_game, check_arena_out, check_state); });

  add_decision_commands(&app, /*use_lar=*/false, storage, result);

  // reduce sat
  std::string cnf_path, objective, reduce_out;
  CLI::App* reduce = app.add_subcommand("reduce", "generate a game from a formula");
  reduce->require_subcommand(1);
  CLI::App* sat = reduce->add_subcommand(
      "sat", "game whose welfare question answers satisfiability");
  sat->add_option("--cnf", cnf_path, "DIMACS CNF file")->required();
  sat->add_option("--objective", objective, "reach | safety | cobuchi")
      ->required()
      ->check(CLI::IsMember({"reach", "safety", "cobuchi"}));
  sat->add_option("-o,--out", reduce_out, "output file (default: stdout)");
  sat->callback([&] { result = run_reduce(cnf_path, objective, reduce_out); });

  // oracle: same decisions, record-based solver back-end
  CLI::App* oracle = app.add_subcommand(
      "oracle", "re-run a decision with the record-based solver back-end");
  oracle->require_subcommand(1);
  add_decision_commands(oracle, /*use_lar=*/true, storage, result);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return result;
}
