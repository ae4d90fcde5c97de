#include "flpart/flpart.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "json_io.hpp"
#include "oracle.hpp"

using namespace flpart;

struct flp_game {
  GameConfig cfg;
};

struct flp_traj {
  Trajectory traj;
};

struct flp_grim {
  GrimTrigger trigger;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

flp_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return FLP_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return FLP_ERR_PARSE;
    case ErrorCode::Budget: return FLP_ERR_BUDGET;
    case ErrorCode::Assumption: return FLP_ERR_ASSUMPTION;
    case ErrorCode::Precondition: return FLP_ERR_PRECONDITION;
    case ErrorCode::Unresolved: return FLP_ERR_UNRESOLVED;
  }
  return FLP_ERR_INTERNAL;
}

template <typename Fn>
flp_status guarded(Fn&& fn) {
  try {
    fn();
    return FLP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FLP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FLP_ERR_INTERNAL;
  }
}

flp_status require(bool ok, const char* message) {
  if (ok) return FLP_OK;
  g_last_error = message;
  return FLP_ERR_INVALID_ARGUMENT;
}

Profile parse_profile(const flp_game* game, const char* bits) {
  if (!bits) throw Error(ErrorCode::InvalidArgument, "profile is NULL");
  return profile_from_bits(bits, game->cfg.m);
}

OracleBudget make_budget(int budget_m, int override_budget) {
  OracleBudget budget;
  if (budget_m > 0) budget.max_m = budget_m;
  budget.override_flag = override_budget != 0;
  return budget;
}

const StageRecord& stage_at(const flp_traj* traj, int stage) {
  if (stage < 0 || stage >= static_cast<int>(traj->traj.stages.size()))
    throw Error(ErrorCode::InvalidArgument, "stage index out of range");
  return traj->traj.stages[stage];
}

}  // namespace

extern "C" {

const char* flp_status_name(flp_status status) {
  switch (status) {
    case FLP_OK: return "ok";
    case FLP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FLP_ERR_PARSE: return "parse error";
    case FLP_ERR_BUDGET: return "budget exceeded";
    case FLP_ERR_ASSUMPTION: return "assumption violated";
    case FLP_ERR_PRECONDITION: return "precondition violated";
    case FLP_ERR_UNRESOLVED: return "unresolved trajectory";
    case FLP_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* flp_last_error(void) { return g_last_error.c_str(); }

const char* flp_version(void) { return "1.0.0"; }

void flp_string_free(char* text) { std::free(text); }

flp_status flp_game_new(int m, int n, const char* a, const char* delta, const char* mu1,
                        flp_game** out) {
  if (flp_status s = require(out && a && delta, "flp_game_new: NULL argument")) return s;
  return guarded([&] {
    Rational mu1_value = mu1 ? parse_rational(mu1) : Rational(0);
    *out = new flp_game{GameConfig(m, n, parse_rational(a), parse_rational(delta), mu1_value)};
  });
}

flp_status flp_game_from_json(const char* json_text, flp_game** out) {
  if (flp_status s = require(out && json_text, "flp_game_from_json: NULL argument")) return s;
  return guarded([&] { *out = new flp_game{game_from_json(json_text)}; });
}

flp_status flp_game_to_json(const flp_game* game, char** out_json) {
  if (flp_status s = require(game && out_json, "flp_game_to_json: NULL argument")) return s;
  return guarded([&] { *out_json = dup_string(game_to_json(game->cfg)); });
}

void flp_game_free(flp_game* game) { delete game; }

int flp_game_m(const flp_game* game) { return game ? game->cfg.m : 0; }

int flp_game_n(const flp_game* game) { return game ? game->cfg.n : 0; }

flp_status flp_game_mean(const flp_game* game, int agent, char** out_rational) {
  if (flp_status s = require(game && out_rational, "flp_game_mean: NULL argument")) return s;
  return guarded([&] { *out_rational = dup_string(rational_str(game->cfg.mean(agent))); });
}

flp_status flp_cost(const flp_game* game, const char* profile, int agent, char** out_rational) {
  if (flp_status s = require(game && out_rational, "flp_cost: NULL argument")) return s;
  return guarded([&] {
    *out_rational = dup_string(rational_str(cost(game->cfg, parse_profile(game, profile), agent)));
  });
}

flp_status flp_profile_is_consecutive(const flp_game* game, const char* profile, int* out) {
  if (flp_status s = require(game && out, "flp_profile_is_consecutive: NULL argument")) return s;
  return guarded([&] { *out = is_consecutive_participation(parse_profile(game, profile)); });
}

flp_status flp_is_nash(const flp_game* game, const char* profile, int* out) {
  if (flp_status s = require(game && out, "flp_is_nash: NULL argument")) return s;
  return guarded([&] { *out = is_nash(game->cfg, parse_profile(game, profile)); });
}

flp_status flp_admissible_k(const flp_game* game, int* out_k, int capacity, int* out_count) {
  if (flp_status s = require(game && out_count && (capacity == 0 || out_k),
                             "flp_admissible_k: NULL argument"))
    return s;
  return guarded([&] {
    std::vector<int> ks = admissible_k(game->cfg);
    *out_count = static_cast<int>(ks.size());
    for (int i = 0; i < capacity && i < *out_count; ++i) out_k[i] = ks[i];
  });
}

flp_status flp_assumption_odd_unique(const flp_game* game, int* out) {
  if (flp_status s = require(game && out, "flp_assumption_odd_unique: NULL argument")) return s;
  return guarded([&] { *out = assumption_odd_unique(game->cfg); });
}

flp_status flp_equilibria_json(const flp_game* game, char** out_json) {
  if (flp_status s = require(game && out_json, "flp_equilibria_json: NULL argument")) return s;
  return guarded([&] {
    *out_json = dup_string(equilibria_to_json(game->cfg, enumerate_equilibria(game->cfg)));
  });
}

flp_status flp_social_welfare(const flp_game* game, const char* profile, char** out_rational) {
  if (flp_status s = require(game && out_rational, "flp_social_welfare: NULL argument")) return s;
  return guarded([&] {
    *out_rational = dup_string(rational_str(social_welfare(game->cfg, parse_profile(game, profile))));
  });
}

flp_status flp_f_omega(const flp_game* game, const char* profile, char** out_rational) {
  if (flp_status s = require(game && out_rational, "flp_f_omega: NULL argument")) return s;
  return guarded([&] {
    std::vector<int> omega = participant_set(parse_profile(game, profile));
    *out_rational = dup_string(rational_str(f_omega(game->cfg, omega)));
  });
}

flp_status flp_welfare_max_json(const flp_game* game, char** out_json) {
  if (flp_status s = require(game && out_json, "flp_welfare_max_json: NULL argument")) return s;
  return guarded([&] { *out_json = dup_string(welfare_to_json(welfare_maximizers(game->cfg))); });
}

flp_status flp_broadcast(const flp_game* game, const char* profile, int* out_omega_size,
                         char** out_mu_bar) {
  if (flp_status s = require(game && out_omega_size && out_mu_bar, "flp_broadcast: NULL argument"))
    return s;
  return guarded([&] {
    BroadcastMessage msg = broadcast(game->cfg, parse_profile(game, profile));
    *out_omega_size = msg.omega_size;
    *out_mu_bar = dup_string(rational_str(msg.mu_bar));
  });
}

flp_status flp_thresholds(const flp_game* game, int omega_size, char** out_join_bound,
                          char** out_leave_bound) {
  if (flp_status s =
          require(game && out_join_bound && out_leave_bound, "flp_thresholds: NULL argument"))
    return s;
  return guarded([&] {
    BroadcastMessage msg;
    msg.omega_size = omega_size;
    Thresholds t = thresholds(game->cfg, msg);
    *out_join_bound = dup_string(rational_str(t.join_bound));
    *out_leave_bound = dup_string(rational_str(t.leave_bound));
  });
}

flp_status flp_myopic_step(const flp_game* game, const char* profile, char** out_next_profile) {
  if (flp_status s = require(game && out_next_profile, "flp_myopic_step: NULL argument")) return s;
  return guarded([&] {
    *out_next_profile = dup_string(profile_bits(myopic_step(game->cfg, parse_profile(game, profile))));
  });
}

flp_status flp_neighborhood_witness(const flp_game* game, const char* profile, char** out_witness) {
  if (flp_status s = require(game && out_witness, "flp_neighborhood_witness: NULL argument"))
    return s;
  return guarded([&] {
    auto witness = neighborhood_witness(game->cfg, parse_profile(game, profile));
    *out_witness = witness ? dup_string(profile_bits(*witness)) : nullptr;
  });
}

const char* flp_terminal_name(flp_terminal terminal) {
  switch (terminal) {
    case FLP_TERMINAL_TYPE1_FIXED: return terminal_name(Terminal::Type1Fixed);
    case FLP_TERMINAL_TYPE2_FIXED: return terminal_name(Terminal::Type2Fixed);
    case FLP_TERMINAL_NEIGHBORHOOD_CYCLE: return terminal_name(Terminal::NeighborhoodCycle);
    case FLP_TERMINAL_UNRESOLVED: return terminal_name(Terminal::Unresolved);
  }
  return "Unresolved";
}

flp_status flp_simulate(const flp_game* game, const char* s0, int max_stages, flp_traj** out) {
  if (flp_status s = require(game && out, "flp_simulate: NULL argument")) return s;
  return guarded([&] {
    int limit = max_stages > 0 ? max_stages : default_max_stages(game->cfg);
    *out = new flp_traj{simulate(game->cfg, parse_profile(game, s0), limit)};
  });
}

int flp_traj_stage_count(const flp_traj* traj) {
  return traj ? static_cast<int>(traj->traj.stages.size()) : 0;
}

flp_status flp_traj_profile(const flp_traj* traj, int stage, char** out_profile) {
  if (flp_status s = require(traj && out_profile, "flp_traj_profile: NULL argument")) return s;
  return guarded([&] { *out_profile = dup_string(profile_bits(stage_at(traj, stage).profile)); });
}

flp_status flp_traj_cost(const flp_traj* traj, int stage, int agent, char** out_rational) {
  if (flp_status s = require(traj && out_rational, "flp_traj_cost: NULL argument")) return s;
  return guarded([&] {
    const StageRecord& rec = stage_at(traj, stage);
    if (agent < 1 || agent > static_cast<int>(rec.costs.size()))
      throw Error(ErrorCode::InvalidArgument, "agent index out of range");
    *out_rational = dup_string(rational_str(rec.costs[agent - 1]));
  });
}

flp_status flp_traj_broadcast(const flp_traj* traj, int stage, int* out_omega_size,
                              char** out_mu_bar) {
  if (flp_status s =
          require(traj && out_omega_size && out_mu_bar, "flp_traj_broadcast: NULL argument"))
    return s;
  return guarded([&] {
    const StageRecord& rec = stage_at(traj, stage);
    *out_omega_size = rec.message.omega_size;
    *out_mu_bar = dup_string(rational_str(rec.message.mu_bar));
  });
}

flp_terminal flp_traj_terminal(const flp_traj* traj) {
  if (!traj) return FLP_TERMINAL_UNRESOLVED;
  switch (traj->traj.terminal) {
    case Terminal::Type1Fixed: return FLP_TERMINAL_TYPE1_FIXED;
    case Terminal::Type2Fixed: return FLP_TERMINAL_TYPE2_FIXED;
    case Terminal::NeighborhoodCycle: return FLP_TERMINAL_NEIGHBORHOOD_CYCLE;
    case Terminal::Unresolved: return FLP_TERMINAL_UNRESOLVED;
  }
  return FLP_TERMINAL_UNRESOLVED;
}

int flp_traj_stages_to_terminal(const flp_traj* traj) {
  return traj ? traj->traj.stages_to_terminal : -1;
}

flp_status flp_traj_witness(const flp_traj* traj, char** out_profile) {
  if (flp_status s = require(traj && out_profile, "flp_traj_witness: NULL argument")) return s;
  return guarded([&] {
    *out_profile = traj->traj.witness ? dup_string(profile_bits(*traj->traj.witness)) : nullptr;
  });
}

void flp_traj_free(flp_traj* traj) { delete traj; }

flp_status flp_grim_new(const flp_game* game, const char* target, flp_grim** out) {
  if (flp_status s = require(game && out, "flp_grim_new: NULL argument")) return s;
  return guarded([&] {
    *out = new flp_grim{GrimTrigger(game->cfg, parse_profile(game, target))};
  });
}

flp_status flp_grim_prescription(const flp_grim* grim, char** out_profile) {
  if (flp_status s = require(grim && out_profile, "flp_grim_prescription: NULL argument")) return s;
  return guarded([&] { *out_profile = dup_string(profile_bits(grim->trigger.prescription())); });
}

flp_status flp_grim_observe(flp_grim* grim, const char* realized_profile) {
  if (flp_status s = require(grim && realized_profile, "flp_grim_observe: NULL argument")) return s;
  return guarded([&] {
    grim->trigger.observe(profile_from_bits(realized_profile, static_cast<int>(grim->trigger.target().size())));
  });
}

int flp_grim_in_punish_phase(const flp_grim* grim) {
  return grim && grim->trigger.punishing() ? 1 : 0;
}

void flp_grim_free(flp_grim* grim) { delete grim; }

flp_status flp_one_stage_deviation_check(const flp_game* game, const char* target,
                                         int enforce_equilibrium, int* out) {
  if (flp_status s = require(game && out, "flp_one_stage_deviation_check: NULL argument")) return s;
  return guarded([&] {
    *out = one_stage_deviation_check(game->cfg, parse_profile(game, target),
                                     enforce_equilibrium != 0);
  });
}

flp_status flp_brute_equilibria_json(const flp_game* game, int budget_m, int override_budget,
                                     char** out_json) {
  if (flp_status s = require(game && out_json, "flp_brute_equilibria_json: NULL argument")) return s;
  return guarded([&] {
    *out_json = dup_string(
        profiles_to_json(brute_equilibria(game->cfg, make_budget(budget_m, override_budget))));
  });
}

flp_status flp_brute_welfare_max_json(const flp_game* game, int budget_m, int override_budget,
                                      char** out_json) {
  if (flp_status s = require(game && out_json, "flp_brute_welfare_max_json: NULL argument"))
    return s;
  return guarded([&] {
    *out_json = dup_string(
        welfare_to_json(brute_welfare_max(game->cfg, make_budget(budget_m, override_budget))));
  });
}

flp_status flp_dynamics_audit_json(const flp_game* game, int budget_m, int override_budget,
                                   char** out_json) {
  if (flp_status s = require(game && out_json, "flp_dynamics_audit_json: NULL argument")) return s;
  return guarded([&] {
    *out_json = dup_string(
        audit_to_json(brute_dynamics_audit(game->cfg, make_budget(budget_m, override_budget))));
  });
}

flp_status flp_verify_config_json(const flp_game* game, int budget_m, int override_budget,
                                  char** out_json) {
  if (flp_status s = require(game && out_json, "flp_verify_config_json: NULL argument")) return s;
  return guarded([&] {
    *out_json =
        dup_string(verify_to_json(verify_config(game->cfg, make_budget(budget_m, override_budget))));
  });
}

flp_status flp_verify_batch_json(unsigned long long seed, int count, int budget_m,
                                 char** out_json) {
  if (flp_status s = require(out_json != nullptr, "flp_verify_batch_json: NULL argument")) return s;
  return guarded([&] {
    *out_json = dup_string(batch_to_json(verify_batch(seed, count, make_budget(budget_m, 0))));
  });
}

flp_status flp_rat_parse(const char* text, char** out_canonical) {
  if (flp_status s = require(text && out_canonical, "flp_rat_parse: NULL argument")) return s;
  return guarded([&] { *out_canonical = dup_string(rational_str(parse_rational(text))); });
}

flp_status flp_rat_to_decimal(const char* rational, int digits, char** out_decimal) {
  if (flp_status s = require(rational && out_decimal, "flp_rat_to_decimal: NULL argument")) return s;
  return guarded([&] {
    *out_decimal = dup_string(rational_decimal(parse_rational(rational), digits));
  });
}

flp_status flp_rat_grid_point(const char* lo, const char* hi, int steps, int index,
                              char** out_rational) {
  if (flp_status s = require(lo && hi && out_rational, "flp_rat_grid_point: NULL argument")) return s;
  return guarded([&] {
    *out_rational =
        dup_string(rational_str(grid_point(parse_rational(lo), parse_rational(hi), steps, index)));
  });
}

flp_status flp_rat_cmp(const char* lhs, const char* rhs, int* out_sign) {
  if (flp_status s = require(lhs && rhs && out_sign, "flp_rat_cmp: NULL argument")) return s;
  return guarded([&] {
    int c = cmp(parse_rational(lhs), parse_rational(rhs));
    *out_sign = c < 0 ? -1 : (c > 0 ? 1 : 0);
  });
}

}  // extern "C"
