/* C interface to the equilibrium solver. All functions return a status code
 * (RELEQ_OK on success); a human-readable message for the most recent failure
 * on the calling thread is available from releq_last_error(). Strings handed
 * out through char** parameters are heap-allocated and must be released with
 * releq_string_free(); games must be released with releq_game_free(). */
#ifndef RELEQ_H
#define RELEQ_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(RELEQ_BUILDING_SHARED)
#define RELEQ_API __attribute__((visibility("default")))
#else
#define RELEQ_API
#endif

/* Status codes. */
#define RELEQ_OK 0         /* success */
#define RELEQ_PARSE 1      /* input text is not well-formed */
#define RELEQ_VALIDATION 2 /* well-formed input violates a model rule */
#define RELEQ_BUDGET 3     /* a configured work budget was exhausted */
#define RELEQ_USAGE 4      /* invalid argument or parameter combination */
#define RELEQ_INTERNAL 5   /* invariant violation inside the library */

/* Opaque game handle. */
typedef struct releq_game releq_game;

/* Options shared by the decision calls. Zero-initialize for the defaults. */
typedef struct releq_options {
  int use_lar;          /* nonzero: solve regions with the record-based oracle */
  int workers;          /* parallel profile checks; 0 = $RELEQ_WORKERS or 1 */
  long long oracle_budget;  /* oracle node budget; 0 = default */
  long long stem_bound;     /* witness stem bound; 0 = |states|^2 */
  long long cycle_bound;    /* witness cycle bound; 0 = |states|^2 */
} releq_options;

/* Library version, e.g. "0.1.0". Static storage; do not free. */
RELEQ_API const char* releq_version(void);

/* Message for the most recent failure on this thread. Static storage that is
 * overwritten by the next failing call; do not free. */
RELEQ_API const char* releq_last_error(void);

/* ----------------------------------------------------------------- games */

/* Parses and validates a game description. */
RELEQ_API int releq_game_parse(const char* json_text, releq_game** out);

/* releq_game_parse on the contents of a file. */
RELEQ_API int releq_game_load(const char* path, releq_game** out);

RELEQ_API void releq_game_free(releq_game* game);

/* Canonical serialization; parsing it back reproduces the game. */
RELEQ_API int releq_game_to_json(const releq_game* game, char** out_text);

/* Validation report for a description: {"valid": true} or
 * {"valid": false, "violations": [...]}. Fails only when the text is not
 * well-formed JSON. */
RELEQ_API int releq_game_check(const char* json_text, char** out_report);

RELEQ_API int releq_game_agent_count(const releq_game* game, int* out);
RELEQ_API int releq_game_state_count(const releq_game* game, int* out);

/* State id for a name; RELEQ_USAGE when the name is unknown. */
RELEQ_API int releq_game_state_id(const releq_game* game, const char* name, int* out);

/* Declared initial state id, or -1 when the description has none. */
RELEQ_API int releq_game_initial(const releq_game* game, int* out);

/* Deviation-tracking arena for plays from `source`, as JSON. */
RELEQ_API int releq_arena_json(const releq_game* game, int source, char** out_text);

/* -------------------------------------------------------------- decisions */

/* Each decision call writes the result as JSON: {"problem": ..., "answer":
 * true|false, "witness": {"stem": [...], "cycle": [...], "profile": "..."} or
 * null, "method": ..., "stats": {...}}. Identical calls produce identical
 * bytes. `opts` may be NULL for the defaults. */

/* Stable play with lower <= payoff <= upper; bounds are bit-strings with one
 * character per agent, agent 0 leftmost. */
RELEQ_API int releq_cne(const releq_game* game, int source, const char* lower_bits,
                        const char* upper_bits, const releq_options* opts,
                        char** out_json);

/* Stable play whose winner count reaches `threshold`. Nonzero
 * `use_scc_method` selects the ranked-component procedure, which requires a
 * visit-infinitely objective for every agent. */
RELEQ_API int releq_swdp(const releq_game* game, int source, int threshold,
                         int use_scc_method, const releq_options* opts,
                         char** out_json);

/* Stable play whose payoff is maximal among all play payoffs. Nonzero
 * `use_count_method` selects the welfare-counting approximation. */
RELEQ_API int releq_podp(const releq_game* game, int source, int use_count_method,
                         const releq_options* opts, char** out_json);

/* ------------------------------------------------------------- reductions */

/* Turns a DIMACS CNF formula into a game whose welfare question at the
 * returned threshold answers satisfiability. `objective` is "reach",
 * "safety", or "cobuchi". The game JSON carries the threshold in an extra
 * top-level "threshold" field that the parser ignores. */
RELEQ_API int releq_reduce_sat(const char* dimacs_text, const char* objective,
                               char** out_game_json, int* out_threshold);

/* Releases a string returned through any char** parameter. */
RELEQ_API void releq_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* RELEQ_H */
