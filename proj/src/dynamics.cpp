#include "dynamics.hpp"

#include <algorithm>

#include "error.hpp"

namespace flpart {

namespace {

void check_profile(const GameConfig& cfg, const Profile& s) {
  if (static_cast<int>(s.size()) != cfg.m)
    throw Error(ErrorCode::InvalidArgument, "profile length " + std::to_string(s.size()) +
                                                " does not match m=" + std::to_string(cfg.m));
}

int hamming(const Profile& a, const Profile& b) {
  int d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

bool in_neighborhood(const Profile& s, const Profile& star, int k_star) {
  if (s == star) return true;
  if (hamming(s, star) != 1) return false;
  int k = participant_count(s);
  if (k != k_star - 1 && k != k_star + 1) return false;
  return is_consecutive_participation(s);
}

// Lowest-start k*-window whose neighborhood contains every given profile.
std::optional<Profile> common_witness(const GameConfig& cfg, int k_star,
                                      const std::vector<const Profile*>& states) {
  for (int lo = 1; lo + k_star - 1 <= cfg.m; ++lo) {
    Profile star = window_profile(cfg.m, lo, lo + k_star - 1);
    bool all = true;
    for (const Profile* s : states) {
      if (!in_neighborhood(*s, star, k_star)) {
        all = false;
        break;
      }
    }
    if (all) return star;
  }
  return std::nullopt;
}

StageRecord make_record(const GameConfig& cfg, int t, Profile s) {
  StageRecord rec;
  rec.t = t;
  rec.message = broadcast(cfg, s);
  rec.costs.reserve(cfg.m);
  for (int i = 1; i <= cfg.m; ++i) rec.costs.push_back(cost(cfg, s, i));
  rec.profile = std::move(s);
  return rec;
}

}  // namespace

BroadcastMessage broadcast(const GameConfig& cfg, const Profile& s) {
  check_profile(cfg, s);
  BroadcastMessage msg;
  Rational sum = 0;
  for (int i = 1; i <= cfg.m; ++i) {
    if (s[i - 1]) {
      sum += cfg.mean(i);
      ++msg.omega_size;
    }
  }
  if (msg.omega_size > 0) msg.mu_bar = sum / msg.omega_size;
  return msg;
}

Thresholds thresholds(const GameConfig& cfg, const BroadcastMessage& msg) {
  if (msg.omega_size < 1)
    throw Error(ErrorCode::Precondition, "switching bounds are undefined for an empty participant set");
  Rational unit = cfg.a / cfg.n;
  return Thresholds{unit, unit * (1 - Rational(1, msg.omega_size))};
}

Profile myopic_step(const GameConfig& cfg, const Profile& s_prev) {
  check_profile(cfg, s_prev);
  BroadcastMessage msg = broadcast(cfg, s_prev);
  Rational opt_out = cfg.opt_out_cost();
  Profile next = s_prev;
  for (int i = 1; i <= cfg.m; ++i) {
    Rational mu_i = cfg.mean(i);
    if (!s_prev[i - 1]) {
      // hypothetical cost of joining, reconstructed from the broadcast alone
      Rational joined_mean = (msg.mu_bar * msg.omega_size + mu_i) / (msg.omega_size + 1);
      Rational hypothetical =
          cfg.a / (Rational(msg.omega_size + 1) * cfg.n) + abs(Rational(mu_i - joined_mean));
      if (hypothetical < opt_out) next[i - 1] = 1;
    } else {
      Rational realized =
          cfg.a / (Rational(msg.omega_size) * cfg.n) + abs(Rational(mu_i - msg.mu_bar));
      if (opt_out < realized) next[i - 1] = 0;
    }
  }
  return next;
}

std::optional<Profile> neighborhood_witness(const GameConfig& cfg, const Profile& s) {
  check_profile(cfg, s);
  std::optional<int> k_star = unique_odd_k(cfg);
  if (!k_star)
    throw Error(ErrorCode::Assumption,
                "neighborhood is undefined without a unique odd equilibrium size");
  return common_witness(cfg, *k_star, {&s});
}

const char* terminal_name(Terminal t) {
  switch (t) {
    case Terminal::Type1Fixed: return "Type1Fixed";
    case Terminal::Type2Fixed: return "Type2Fixed";
    case Terminal::NeighborhoodCycle: return "NeighborhoodCycle";
    case Terminal::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

int default_max_stages(const GameConfig& cfg) {
  std::optional<int> k_star = unique_odd_k(cfg);
  int k = k_star ? *k_star : admissible_k(cfg).back();
  return cfg.m + k + 2;
}

Trajectory simulate(const GameConfig& cfg, const Profile& s0, int max_stages) {
  check_profile(cfg, s0);
  if (max_stages < 1) throw Error(ErrorCode::InvalidArgument, "max_stages must be >= 1");

  Trajectory traj;
  traj.stages.push_back(make_record(cfg, 0, s0));
  std::optional<int> k_star = unique_odd_k(cfg);

  for (int t = 1; t <= max_stages; ++t) {
    const Profile& cur = traj.stages.back().profile;
    Profile next = myopic_step(cfg, cur);

    if (next == cur) {
      bool all_out = participant_count(cur) == 0;
      traj.terminal = all_out ? Terminal::Type1Fixed : Terminal::Type2Fixed;
      traj.stages_to_terminal = traj.stages.back().t;
      if (!all_out) traj.witness = cur;
      return traj;
    }
    if (traj.stages.size() >= 2 && next == traj.stages[traj.stages.size() - 2].profile) {
      // period-2 alternation; classify only when a common neighborhood exists
      if (k_star) {
        const Profile& a = traj.stages[traj.stages.size() - 2].profile;
        const Profile& b = traj.stages.back().profile;
        if (auto star = common_witness(cfg, *k_star, {&a, &b})) {
          traj.terminal = Terminal::NeighborhoodCycle;
          traj.stages_to_terminal = traj.stages[traj.stages.size() - 2].t;
          traj.witness = star;
          return traj;
        }
      }
    }
    traj.stages.push_back(make_record(cfg, t, std::move(next)));
  }
  traj.terminal = Terminal::Unresolved;
  traj.stages_to_terminal = -1;
  return traj;
}

GrimTrigger::GrimTrigger(const GameConfig& cfg, Profile target) : cfg_(cfg), target_(std::move(target)) {
  check_profile(cfg_, target_);
  if (participant_count(target_) == 0 || !is_consecutive_participation(target_) ||
      !is_nash(cfg_, target_))
    throw Error(ErrorCode::Precondition, "grim-trigger target must be a participation equilibrium");
}

Profile GrimTrigger::prescription() const {
  if (punishing_) return Profile(cfg_.m, 0);
  return target_;
}

void GrimTrigger::observe(const Profile& realized) {
  check_profile(cfg_, realized);
  if (realized != prescription()) punishing_ = true;  // absorbing
}

bool one_stage_deviation_check(const GameConfig& cfg, const Profile& target,
                               bool enforce_equilibrium) {
  check_profile(cfg, target);
  if (enforce_equilibrium) {
    if (participant_count(target) == 0 || !is_consecutive_participation(target) ||
        !is_nash(cfg, target))
      throw Error(ErrorCode::Precondition, "target is not a participation equilibrium");
  }
  return is_nash(cfg, target) && is_nash(cfg, Profile(cfg.m, 0));
}

}  // namespace flpart
