#ifndef FLPART_DYNAMICS_HPP
#define FLPART_DYNAMICS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"

namespace flpart {

// Per-stage server broadcast: participant count and participant mean.
// mu_bar is 0 by convention when nobody participates.
struct BroadcastMessage {
  int omega_size = 0;
  Rational mu_bar = 0;
};

BroadcastMessage broadcast(const GameConfig& cfg, const Profile& s);

// Switching bounds for a nonempty broadcast: an outsider joins when its mean
// is within a/n of mu_bar, a participant leaves when the distance exceeds
// (a/n)(1 - 1/|Omega|). Throws Precondition for omega_size == 0.
struct Thresholds {
  Rational join_bound;
  Rational leave_bound;
};

Thresholds thresholds(const GameConfig& cfg, const BroadcastMessage& msg);

// Simultaneous best reply from the previous broadcast: each agent flips iff
// the hypothetical cost of the flipped action is strictly lower than the
// realized cost; ties keep the previous action.
Profile myopic_step(const GameConfig& cfg, const Profile& s_prev);

// Lowest-start k*-window whose neighborhood contains s: either s itself, or s
// is a (k*+/-1)-consecutive participation differing from the window in one
// coordinate. Requires a unique odd k* (throws Assumption otherwise).
std::optional<Profile> neighborhood_witness(const GameConfig& cfg, const Profile& s);

enum class Terminal {
  Type1Fixed,         // fixed at the all-out profile
  Type2Fixed,         // fixed at a participation equilibrium
  NeighborhoodCycle,  // period-2 alternation inside a common neighborhood
  Unresolved,         // stage limit hit without a recognized terminal
};

const char* terminal_name(Terminal t);

struct StageRecord {
  int t = 0;
  Profile profile;
  std::vector<Rational> costs;  // realized cost per agent under `profile`
  BroadcastMessage message;     // derived from `profile`
};

// Recorded stages stop before the first repeated profile; stages_to_terminal
// is the index of the first stage belonging to the terminal pattern. witness
// holds the fixed profile (Type2Fixed) or the common equilibrium window
// (NeighborhoodCycle).
struct Trajectory {
  std::vector<StageRecord> stages;
  Terminal terminal = Terminal::Unresolved;
  int stages_to_terminal = -1;
  std::optional<Profile> witness;
};

// Stage budget that the convergence bound guarantees is enough whenever a
// unique odd k* exists; falls back to the largest admissible k otherwise.
int default_max_stages(const GameConfig& cfg);

Trajectory simulate(const GameConfig& cfg, const Profile& s0, int max_stages);

// Cooperate on a fixed participation equilibrium; any observed deviation
// switches permanently to the all-out equilibrium.
class GrimTrigger {
 public:
  GrimTrigger(const GameConfig& cfg, Profile target);  // target must be a type-2 equilibrium

  Profile prescription() const;
  void observe(const Profile& realized);
  bool punishing() const { return punishing_; }
  const Profile& target() const { return target_; }

 private:
  GameConfig cfg_;
  Profile target_;
  bool punishing_ = false;
};

// Both grim-trigger phases play a stage equilibrium: no unilateral flip
// strictly reduces any agent's cost at the target or at the all-out profile.
// With enforce_equilibrium set, a non-equilibrium target is rejected.
bool one_stage_deviation_check(const GameConfig& cfg, const Profile& target,
                               bool enforce_equilibrium = true);

}  // namespace flpart

#endif  // FLPART_DYNAMICS_HPP
