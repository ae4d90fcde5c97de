#ifndef FLPART_CORE_HPP
#define FLPART_CORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace flpart {

// Stage game: m agents, each holding n data points, decide between local
// training (cost a/n) and joining the federation (cost a/(|Omega| n) plus the
// distance between their own mean and the federation mean). Agent means are
// evenly spaced: mu_i = mu1 + (i-1) * delta.
struct GameConfig {
  int m = 1;
  int n = 1;
  Rational a = 1;
  Rational delta = 0;
  Rational mu1 = 0;

  GameConfig() = default;
  GameConfig(int m, int n, Rational a, Rational delta, Rational mu1 = 0);

  Rational mean(int agent) const;  // agent in 1..m
  Rational opt_out_cost() const { return a / n; }
};

// Participation vector, index 0 holds agent 1's action.
using Profile = std::vector<std::uint8_t>;

Profile profile_from_bits(const std::string& bits, int m);
std::string profile_bits(const Profile& s);
std::vector<int> participant_set(const Profile& s);  // 1-based, ascending
int participant_count(const Profile& s);
Profile window_profile(int m, int lo, int hi);  // agents lo..hi participate
Profile flip_agent(const Profile& s, int agent);

Rational cost(const GameConfig& cfg, const Profile& s, int agent);

// Empty sets and singletons count as consecutive; the all-out equilibrium is
// the 0-consecutive participation.
bool is_consecutive(const std::vector<int>& omega);
bool is_consecutive_participation(const Profile& s);

// No agent strictly gains by a unilateral flip (exact comparisons).
bool is_nash(const GameConfig& cfg, const Profile& s);

// Participant counts k for which every k-window is an equilibrium:
//   k == 1 needs delta >= 2a/(n(k+1)); k == m needs delta <= 2a/(nk);
//   otherwise both, with non-strict boundaries. At most two values; two
//   exactly when 2a/(n delta) is an integer.
std::vector<int> admissible_k(const GameConfig& cfg);

bool assumption_odd_unique(const GameConfig& cfg);
// The unique odd k* when assumption_odd_unique holds, nullopt otherwise.
std::optional<int> unique_odd_k(const GameConfig& cfg);

struct EquilibriumReport {
  bool has_type1 = true;  // the all-out profile is always an equilibrium
  std::vector<int> admissible_k;
  bool unique_odd = false;
  std::vector<Profile> type2_profiles;  // sliding windows, ordered by (k, start)
  std::size_t total_count() const { return type2_profiles.size() + 1; }
};

EquilibriumReport enumerate_equilibria(const GameConfig& cfg);

// Sum over omega of |mu_i - mean(mu over omega)|; 0 for the empty set.
Rational f_omega(const GameConfig& cfg, const std::vector<int>& omega);

// Utilitarian welfare -sum_i cost_i, by direct summation.
Rational social_welfare(const GameConfig& cfg, const Profile& s);

// Minimum of f over k-subsets, attained by k-windows:
// (k^2-1)/4 * delta for odd k, k^2/4 * delta for even k.
Rational best_window_f(const GameConfig& cfg, int k);

struct WelfareReport {
  Rational max_value;
  std::vector<int> optimal_sizes;   // participant counts attaining the max (0..m)
  std::vector<Profile> maximizers;  // ordered by (size, start)
};

// Searches participant counts 0..m with the closed-form best-window f. The
// empty profile is scored by direct summation (-m a/n), which ties the
// singleton count whenever 1 is optimal.
WelfareReport welfare_maximizers(const GameConfig& cfg);

}  // namespace flpart

#endif  // FLPART_CORE_HPP
