#include "oracle.hpp"

#include <algorithm>
#include <set>

#include "error.hpp"

namespace flpart {

namespace {

Profile profile_from_mask(int m, std::uint64_t mask) {
  Profile s(m, 0);
  for (int i = 0; i < m; ++i) s[i] = (mask >> i) & 1;
  return s;
}

std::set<std::string> bit_set(const std::vector<Profile>& profiles) {
  std::set<std::string> out;
  for (const Profile& p : profiles) out.insert(profile_bits(p));
  return out;
}

std::vector<std::string> difference(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::vector<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

void OracleBudget::check(int m) const {
  if (override_flag) return;
  int limit = std::min(max_m, kHardCap);
  if (m > limit)
    throw Error(ErrorCode::Budget, "m=" + std::to_string(m) + " exceeds the enumeration budget of " +
                                       std::to_string(limit) + " (override to force)");
}

std::vector<Profile> brute_equilibria(const GameConfig& cfg, const OracleBudget& budget) {
  budget.check(cfg.m);
  std::vector<Profile> out;
  const std::uint64_t total = std::uint64_t(1) << cfg.m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Profile s = profile_from_mask(cfg.m, mask);
    if (is_nash(cfg, s)) out.push_back(std::move(s));
  }
  return out;
}

WelfareReport brute_welfare_max(const GameConfig& cfg, const OracleBudget& budget) {
  budget.check(cfg.m);
  WelfareReport report;
  bool first = true;
  const std::uint64_t total = std::uint64_t(1) << cfg.m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Profile s = profile_from_mask(cfg.m, mask);
    Rational w = social_welfare(cfg, s);
    if (first || w > report.max_value) {
      report.max_value = w;
      report.maximizers.clear();
      report.maximizers.push_back(std::move(s));
      first = false;
    } else if (w == report.max_value) {
      report.maximizers.push_back(std::move(s));
    }
  }
  std::sort(report.maximizers.begin(), report.maximizers.end(),
            [](const Profile& a, const Profile& b) {
              int ka = participant_count(a), kb = participant_count(b);
              if (ka != kb) return ka < kb;
              return participant_set(a) < participant_set(b);
            });
  for (const Profile& p : report.maximizers) {
    int k = participant_count(p);
    if (report.optimal_sizes.empty() || report.optimal_sizes.back() != k)
      report.optimal_sizes.push_back(k);
  }
  return report;
}

DynamicsAudit brute_dynamics_audit(const GameConfig& cfg, const OracleBudget& budget) {
  budget.check(cfg.m);
  std::optional<int> k_star = unique_odd_k(cfg);
  if (!k_star) {
    std::string ks;
    for (int k : admissible_k(cfg)) ks += (ks.empty() ? "" : ",") + std::to_string(k);
    std::string branch = cfg.delta * cfg.m < 2 * cfg.a / cfg.n
                             ? "delta < 2a/(nm), the full-participation branch"
                             : (cfg.delta > cfg.a / cfg.n ? "delta > a/n, the lone-participant branch"
                                                          : "2a/(nm) <= delta <= a/n, the interior branch");
    throw Error(ErrorCode::Assumption, "dynamics audit needs a unique odd equilibrium size; admissible k = {" +
                                           ks + "} (" + branch + ")");
  }

  DynamicsAudit audit;
  audit.stage_budget = cfg.m + *k_star + 2;
  audit.consecutive_bound = (*k_star + 2) / 2;  // ceil((k*+1)/2)
  const std::uint64_t total = std::uint64_t(1) << cfg.m;
  audit.initial_states = total;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Profile s0 = profile_from_mask(cfg.m, mask);
    Trajectory traj = simulate(cfg, s0, audit.stage_budget);
    switch (traj.terminal) {
      case Terminal::Type1Fixed: ++audit.type1; break;
      case Terminal::Type2Fixed: ++audit.type2; break;
      case Terminal::NeighborhoodCycle: ++audit.cycle; break;
      case Terminal::Unresolved: ++audit.unresolved; continue;
    }
    audit.max_stages_to_terminal = std::max(audit.max_stages_to_terminal, traj.stages_to_terminal);
    if (mask != 0) {
      int first_consecutive = -1;
      for (const StageRecord& rec : traj.stages) {
        if (is_consecutive_participation(rec.profile)) {
          first_consecutive = rec.t;
          break;
        }
      }
      if (first_consecutive < 0 || first_consecutive > audit.consecutive_bound)
        audit.consecutive_bound_ok = false;
      audit.max_stage_to_consecutive = std::max(audit.max_stage_to_consecutive, first_consecutive);
    }
  }
  return audit;
}

VerifyReport verify_config(const GameConfig& cfg, const OracleBudget& budget) {
  VerifyReport report;

  std::set<std::string> brute = bit_set(brute_equilibria(cfg, budget));
  EquilibriumReport analytic = enumerate_equilibria(cfg);
  std::set<std::string> analytic_set = bit_set(analytic.type2_profiles);
  analytic_set.insert(std::string(cfg.m, '0'));
  report.equilibrium_count = brute.size();
  report.equilibria_only_brute = difference(brute, analytic_set);
  report.equilibria_only_analytic = difference(analytic_set, brute);
  report.equilibria_agree =
      report.equilibria_only_brute.empty() && report.equilibria_only_analytic.empty();

  WelfareReport brute_w = brute_welfare_max(cfg, budget);
  WelfareReport analytic_w = welfare_maximizers(cfg);
  std::set<std::string> brute_max = bit_set(brute_w.maximizers);
  std::set<std::string> analytic_max = bit_set(analytic_w.maximizers);
  report.max_welfare = rational_str(brute_w.max_value);
  report.welfare_only_brute = difference(brute_max, analytic_max);
  report.welfare_only_analytic = difference(analytic_max, brute_max);
  report.welfare_agree = report.welfare_only_brute.empty() &&
                         report.welfare_only_analytic.empty() &&
                         brute_w.max_value == analytic_w.max_value;

  if (assumption_odd_unique(cfg)) {
    report.audit_run = true;
    report.audit = brute_dynamics_audit(cfg, budget);
  }
  return report;
}

GameConfig sample_config(std::mt19937_64& rng) {
  auto uniform = [&rng](std::uint64_t lo, std::uint64_t hi) {  // inclusive
    return lo + rng() % (hi - lo + 1);
  };
  int m = static_cast<int>(uniform(1, 12));
  int n = static_cast<int>(uniform(1, 1000));
  std::uint64_t a_den = uniform(1, 100);
  std::uint64_t a_num = uniform(1, 10000 * a_den);  // a in (0, 10000]
  Rational a(static_cast<unsigned long>(a_num), static_cast<unsigned long>(a_den));
  a.canonicalize();

  Rational delta;
  if (uniform(1, 10) == 1) {
    // exact equilibrium boundary: delta = 2a/(nk)
    int k = static_cast<int>(uniform(1, m));
    delta = 2 * a / (Rational(n) * k);
  } else {
    std::uint64_t den = uniform(1, 100);
    std::uint64_t num = uniform(0, den);
    delta = 2 * a / n * Rational(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    delta.canonicalize();
  }

  Rational mu1(static_cast<long>(uniform(0, 20)) - 10, static_cast<unsigned long>(uniform(1, 4)));
  mu1.canonicalize();
  return GameConfig(m, n, a, delta, mu1);
}

BatchReport verify_batch(std::uint64_t seed, int count, const OracleBudget& budget) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "batch count must be >= 1");
  BatchReport report;
  report.seed = seed;
  report.count = count;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    GameConfig cfg = sample_config(rng);
    VerifyReport r = verify_config(cfg, budget);
    if (!r.pass()) {
      ++report.failures;
      report.failed.emplace_back(cfg, std::move(r));
    }
  }
  return report;
}

}  // namespace flpart
