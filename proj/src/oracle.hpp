#ifndef FLPART_ORACLE_HPP
#define FLPART_ORACLE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "core.hpp"
#include "dynamics.hpp"

namespace flpart {

// Exhaustive 2^m enumeration is desk-scale only. max_m may be raised to the
// hard cap; override_flag bypasses the guard entirely.
struct OracleBudget {
  static constexpr int kDefaultMaxM = 12;
  static constexpr int kHardCap = 22;

  int max_m = kDefaultMaxM;
  bool override_flag = false;

  void check(int m) const;
};

// All 2^m profiles passing the per-agent deviation check. Uses cost() only,
// never the window characterization it is used to verify.
std::vector<Profile> brute_equilibria(const GameConfig& cfg, const OracleBudget& budget);

// Exact argmax of welfare over all 2^m profiles by direct cost summation.
WelfareReport brute_welfare_max(const GameConfig& cfg, const OracleBudget& budget);

struct DynamicsAudit {
  std::uint64_t initial_states = 0;
  std::uint64_t type1 = 0;
  std::uint64_t type2 = 0;
  std::uint64_t cycle = 0;
  std::uint64_t unresolved = 0;
  int stage_budget = 0;              // simulate's per-trajectory step limit (m + k* + 2)
  int max_stages_to_terminal = 0;
  int consecutive_bound = 0;         // ceil((k*+1)/2)
  int max_stage_to_consecutive = 0;  // over starts with at least one participant
  bool consecutive_bound_ok = true;
  bool ok() const { return unresolved == 0 && consecutive_bound_ok; }
};

// Simulates from every initial profile; requires a unique odd k*.
DynamicsAudit brute_dynamics_audit(const GameConfig& cfg, const OracleBudget& budget);

struct VerifyReport {
  bool equilibria_agree = false;
  std::uint64_t equilibrium_count = 0;
  std::vector<std::string> equilibria_only_brute;     // counterexample dump
  std::vector<std::string> equilibria_only_analytic;
  bool welfare_agree = false;
  std::string max_welfare;
  std::vector<std::string> welfare_only_brute;
  std::vector<std::string> welfare_only_analytic;
  bool audit_run = false;  // dynamics audit applies only under a unique odd k*
  DynamicsAudit audit;
  bool pass() const {
    return equilibria_agree && welfare_agree && (!audit_run || audit.ok());
  }
};

// Brute-force/analytic agreement for one config: equilibrium sets, welfare
// maximizers, and (when a unique odd k* exists) the dynamics audit.
VerifyReport verify_config(const GameConfig& cfg, const OracleBudget& budget);

// Seeded config sampler: m uniform on 1..12, n on 1..1000, a rational in
// (0, 10000], delta rational in [0, 2a/n] with exact boundaries 2a/(nk)
// injected at a 10% rate.
GameConfig sample_config(std::mt19937_64& rng);

struct BatchReport {
  std::uint64_t seed = 0;
  int count = 0;
  int failures = 0;
  std::vector<std::pair<GameConfig, VerifyReport>> failed;  // minimal dump: failing configs only
  bool pass() const { return failures == 0; }
};

BatchReport verify_batch(std::uint64_t seed, int count, const OracleBudget& budget);

}  // namespace flpart

#endif  // FLPART_ORACLE_HPP
