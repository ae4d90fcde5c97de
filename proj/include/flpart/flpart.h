/* flpart — federated-learning participation game engine.
 *
 * C interface over the exact-rational core. All handles are opaque; every
 * function that can fail returns an flp_status and reports details through
 * flp_last_error(). Rationals cross the boundary as canonical strings
 * ("p" or "p/q"); strategy profiles as '0'/'1' strings of length m, entry i
 * holding agent i+1's action. Strings returned through char** out-params are
 * allocated by the library and must be released with flp_string_free().
 */
#ifndef FLPART_H
#define FLPART_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum flp_status {
  FLP_OK = 0,
  FLP_ERR_INVALID_ARGUMENT = 1,
  FLP_ERR_PARSE = 2,
  FLP_ERR_BUDGET = 3,      /* exhaustive enumeration budget exceeded */
  FLP_ERR_ASSUMPTION = 4,  /* operation requires a unique odd equilibrium size */
  FLP_ERR_PRECONDITION = 5,
  FLP_ERR_UNRESOLVED = 6,  /* trajectory hit the stage limit */
  FLP_ERR_INTERNAL = 7
} flp_status;

typedef struct flp_game flp_game;
typedef struct flp_traj flp_traj;
typedef struct flp_grim flp_grim;

const char* flp_status_name(flp_status status);
/* Detail message from the most recent failing call on this thread. */
const char* flp_last_error(void);
const char* flp_version(void);
void flp_string_free(char* text);

/* --- game configuration ------------------------------------------------- */

/* a, delta, mu1 are exact strings in decimal ("0.632") or fraction ("79/10")
 * form; mu1 may be NULL for 0. */
flp_status flp_game_new(int m, int n, const char* a, const char* delta, const char* mu1,
                        flp_game** out);
/* Flat JSON object {"m":..,"n":..,"a":"..","delta":"..","mu1":".."}. */
flp_status flp_game_from_json(const char* json_text, flp_game** out);
flp_status flp_game_to_json(const flp_game* game, char** out_json);
void flp_game_free(flp_game* game);

int flp_game_m(const flp_game* game);
int flp_game_n(const flp_game* game);
flp_status flp_game_mean(const flp_game* game, int agent, char** out_rational);

/* --- stage game ----------------------------------------------------------
 * Agent indices are 1-based throughout. */

flp_status flp_cost(const flp_game* game, const char* profile, int agent, char** out_rational);
flp_status flp_profile_is_consecutive(const flp_game* game, const char* profile, int* out);
flp_status flp_is_nash(const flp_game* game, const char* profile, int* out);
/* Writes up to capacity admissible participant counts (ascending); the true
 * count goes to *out_count. Two slots always suffice. */
flp_status flp_admissible_k(const flp_game* game, int* out_k, int capacity, int* out_count);
flp_status flp_assumption_odd_unique(const flp_game* game, int* out);
/* {"admissible_k":[..],"unique_odd":..,"type2_profiles":[..],"total_count":..} */
flp_status flp_equilibria_json(const flp_game* game, char** out_json);
flp_status flp_social_welfare(const flp_game* game, const char* profile, char** out_rational);
/* f over the participant set of `profile`: sum of |mu_i - participant mean|. */
flp_status flp_f_omega(const flp_game* game, const char* profile, char** out_rational);
/* {"max_value":"..","optimal_sizes":[..],"maximizers":[..]} */
flp_status flp_welfare_max_json(const flp_game* game, char** out_json);

/* --- repeated game -------------------------------------------------------
 * Broadcast convention: mu_bar is "0" when the participant set is empty. */

flp_status flp_broadcast(const flp_game* game, const char* profile, int* out_omega_size,
                         char** out_mu_bar);
/* join bound a/n and leave bound (a/n)(1 - 1/omega_size); omega_size >= 1. */
flp_status flp_thresholds(const flp_game* game, int omega_size, char** out_join_bound,
                          char** out_leave_bound);
flp_status flp_myopic_step(const flp_game* game, const char* profile, char** out_next_profile);
/* *out_witness is set to NULL when no equilibrium neighborhood contains the
 * profile. Fails with FLP_ERR_ASSUMPTION unless the equilibrium size is
 * unique and odd. */
flp_status flp_neighborhood_witness(const flp_game* game, const char* profile, char** out_witness);

typedef enum flp_terminal {
  FLP_TERMINAL_TYPE1_FIXED = 0,
  FLP_TERMINAL_TYPE2_FIXED = 1,
  FLP_TERMINAL_NEIGHBORHOOD_CYCLE = 2,
  FLP_TERMINAL_UNRESOLVED = 3
} flp_terminal;

const char* flp_terminal_name(flp_terminal terminal);

/* max_stages <= 0 selects the default m + k* + 2. */
flp_status flp_simulate(const flp_game* game, const char* s0, int max_stages, flp_traj** out);
int flp_traj_stage_count(const flp_traj* traj);
flp_status flp_traj_profile(const flp_traj* traj, int stage, char** out_profile);
flp_status flp_traj_cost(const flp_traj* traj, int stage, int agent, char** out_rational);
flp_status flp_traj_broadcast(const flp_traj* traj, int stage, int* out_omega_size,
                              char** out_mu_bar);
flp_terminal flp_traj_terminal(const flp_traj* traj);
/* Index of the first stage belonging to the terminal pattern; -1 if unresolved. */
int flp_traj_stages_to_terminal(const flp_traj* traj);
/* Fixed profile (type 2) or the common equilibrium window (cycle); NULL otherwise. */
flp_status flp_traj_witness(const flp_traj* traj, char** out_profile);
void flp_traj_free(flp_traj* traj);

/* Grim trigger: cooperate on a participation equilibrium, punish any observed
 * deviation by playing all-out forever. The target must be a type-2
 * equilibrium of the stage game. */
flp_status flp_grim_new(const flp_game* game, const char* target, flp_grim** out);
flp_status flp_grim_prescription(const flp_grim* grim, char** out_profile);
flp_status flp_grim_observe(flp_grim* grim, const char* realized_profile);
int flp_grim_in_punish_phase(const flp_grim* grim);
void flp_grim_free(flp_grim* grim);

/* Both grim-trigger phases play a stage equilibrium. enforce_equilibrium != 0
 * rejects non-equilibrium targets with FLP_ERR_PRECONDITION; 0 runs the raw
 * deviation check anyway. */
flp_status flp_one_stage_deviation_check(const flp_game* game, const char* target,
                                         int enforce_equilibrium, int* out);

/* --- brute-force oracles -------------------------------------------------
 * budget_m <= 0 selects the default of 12; the hard cap is 22 unless
 * override_budget is nonzero. */

flp_status flp_brute_equilibria_json(const flp_game* game, int budget_m, int override_budget,
                                     char** out_json);
flp_status flp_brute_welfare_max_json(const flp_game* game, int budget_m, int override_budget,
                                      char** out_json);
flp_status flp_dynamics_audit_json(const flp_game* game, int budget_m, int override_budget,
                                   char** out_json);
flp_status flp_verify_config_json(const flp_game* game, int budget_m, int override_budget,
                                  char** out_json);
flp_status flp_verify_batch_json(unsigned long long seed, int count, int budget_m,
                                 char** out_json);

/* --- exact-rational helpers ---------------------------------------------- */

flp_status flp_rat_parse(const char* text, char** out_canonical);
flp_status flp_rat_to_decimal(const char* rational, int digits, char** out_decimal);
/* Exact grid point lo + index*(hi-lo)/(steps-1); steps == 1 yields lo. */
flp_status flp_rat_grid_point(const char* lo, const char* hi, int steps, int index,
                              char** out_rational);
flp_status flp_rat_cmp(const char* lhs, const char* rhs, int* out_sign);

#ifdef __cplusplus
}
#endif

#endif /* FLPART_H */
