#include "core.hpp"

#include <algorithm>

#include "error.hpp"

namespace flpart {

namespace {

void check_agent(const GameConfig& cfg, int agent) {
  if (agent < 1 || agent > cfg.m)
    throw Error(ErrorCode::InvalidArgument,
                "agent index " + std::to_string(agent) + " out of range 1.." + std::to_string(cfg.m));
}

void check_profile(const GameConfig& cfg, const Profile& s) {
  if (static_cast<int>(s.size()) != cfg.m)
    throw Error(ErrorCode::InvalidArgument, "profile length " + std::to_string(s.size()) +
                                                " does not match m=" + std::to_string(cfg.m));
}

void check_omega(const GameConfig& cfg, const std::vector<int>& omega) {
  for (int i : omega) check_agent(cfg, i);
}

Rational participant_mean(const GameConfig& cfg, const Profile& s, int* count_out) {
  Rational sum = 0;
  int count = 0;
  for (int i = 1; i <= cfg.m; ++i) {
    if (s[i - 1]) {
      sum += cfg.mean(i);
      ++count;
    }
  }
  *count_out = count;
  return count == 0 ? Rational(0) : Rational(sum / count);
}

}  // namespace

GameConfig::GameConfig(int m_, int n_, Rational a_, Rational delta_, Rational mu1_)
    : m(m_), n(n_), a(std::move(a_)), delta(std::move(delta_)), mu1(std::move(mu1_)) {
  // mpq_class arithmetic and equality assume canonical operands
  a.canonicalize();
  delta.canonicalize();
  mu1.canonicalize();
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (a <= 0) throw Error(ErrorCode::InvalidArgument, "a must be > 0");
  if (delta < 0) throw Error(ErrorCode::InvalidArgument, "delta must be >= 0");
}

Rational GameConfig::mean(int agent) const {
  check_agent(*this, agent);
  return mu1 + delta * (agent - 1);
}

Profile profile_from_bits(const std::string& bits, int m) {
  if (static_cast<int>(bits.size()) != m)
    throw Error(ErrorCode::InvalidArgument,
                "profile '" + bits + "' does not have length m=" + std::to_string(m));
  Profile s(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw Error(ErrorCode::Parse, "profile must be a 0/1 string, got '" + bits + "'");
    s[i] = bits[i] == '1';
  }
  return s;
}

std::string profile_bits(const Profile& s) {
  std::string out(s.size(), '0');
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i]) out[i] = '1';
  return out;
}

std::vector<int> participant_set(const Profile& s) {
  std::vector<int> omega;
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i]) omega.push_back(static_cast<int>(i) + 1);
  return omega;
}

int participant_count(const Profile& s) {
  int k = 0;
  for (auto b : s) k += b;
  return k;
}

Profile window_profile(int m, int lo, int hi) {
  if (lo < 1 || hi > m || lo > hi)
    throw Error(ErrorCode::InvalidArgument, "bad window [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  Profile s(m, 0);
  for (int i = lo; i <= hi; ++i) s[i - 1] = 1;
  return s;
}

Profile flip_agent(const Profile& s, int agent) {
  Profile t = s;
  t.at(agent - 1) ^= 1;
  return t;
}

Rational cost(const GameConfig& cfg, const Profile& s, int agent) {
  check_profile(cfg, s);
  check_agent(cfg, agent);
  if (!s[agent - 1]) return cfg.opt_out_cost();
  int k = 0;
  Rational mu_bar = participant_mean(cfg, s, &k);
  Rational deviation = abs(Rational(cfg.mean(agent) - mu_bar));
  return cfg.a / (Rational(k) * cfg.n) + deviation;
}

bool is_consecutive(const std::vector<int>& omega) {
  if (omega.size() <= 1) return true;
  std::vector<int> sorted = omega;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] != sorted[i - 1] + 1) return false;
  return true;
}

bool is_consecutive_participation(const Profile& s) {
  return is_consecutive(participant_set(s));
}

bool is_nash(const GameConfig& cfg, const Profile& s) {
  check_profile(cfg, s);
  for (int i = 1; i <= cfg.m; ++i) {
    if (cost(cfg, flip_agent(s, i), i) < cost(cfg, s, i)) return false;
  }
  return true;
}

std::vector<int> admissible_k(const GameConfig& cfg) {
  std::vector<int> out;
  Rational two_a_over_n = 2 * cfg.a / cfg.n;
  for (int k = 1; k <= cfg.m; ++k) {
    // endpoint FL agent stays: delta <= 2a/(nk); vacuous for a lone participant
    bool fl_stays = k == 1 || cfg.delta * k <= two_a_over_n;
    // nearest outsider stays out: delta >= 2a/(n(k+1)); vacuous when nobody is out
    bool outsider_stays = k == cfg.m || cfg.delta * (k + 1) >= two_a_over_n;
    if (fl_stays && outsider_stays) out.push_back(k);
  }
  return out;
}

bool assumption_odd_unique(const GameConfig& cfg) {
  return unique_odd_k(cfg).has_value();
}

std::optional<int> unique_odd_k(const GameConfig& cfg) {
  std::vector<int> ks = admissible_k(cfg);
  if (ks.size() == 1 && ks[0] % 2 == 1) return ks[0];
  return std::nullopt;
}

EquilibriumReport enumerate_equilibria(const GameConfig& cfg) {
  EquilibriumReport report;
  report.admissible_k = admissible_k(cfg);
  report.unique_odd = unique_odd_k(cfg).has_value();
  for (int k : report.admissible_k) {
    for (int lo = 1; lo + k - 1 <= cfg.m; ++lo) {
      report.type2_profiles.push_back(window_profile(cfg.m, lo, lo + k - 1));
    }
  }
  return report;
}

Rational f_omega(const GameConfig& cfg, const std::vector<int>& omega) {
  check_omega(cfg, omega);
  if (omega.empty()) return 0;
  Rational sum = 0;
  for (int i : omega) sum += cfg.mean(i);
  Rational mu_bar = sum / static_cast<int>(omega.size());
  Rational total = 0;
  for (int i : omega) total += abs(Rational(cfg.mean(i) - mu_bar));
  return total;
}

Rational social_welfare(const GameConfig& cfg, const Profile& s) {
  check_profile(cfg, s);
  Rational total = 0;
  for (int i = 1; i <= cfg.m; ++i) total += cost(cfg, s, i);
  return -total;
}

Rational best_window_f(const GameConfig& cfg, int k) {
  if (k < 0 || k > cfg.m) throw Error(ErrorCode::InvalidArgument, "window size out of range");
  if (k % 2 == 1) return Rational(k * k - 1) / 4 * cfg.delta;
  return Rational(k * k) / 4 * cfg.delta;
}

WelfareReport welfare_maximizers(const GameConfig& cfg) {
  WelfareReport report;
  Rational empty_welfare = -Rational(cfg.m) * cfg.a / cfg.n;
  report.max_value = empty_welfare;
  report.optimal_sizes = {0};
  for (int k = 1; k <= cfg.m; ++k) {
    Rational w = Rational(k - cfg.m - 1) * cfg.a / cfg.n - best_window_f(cfg, k);
    if (w > report.max_value) {
      report.max_value = w;
      report.optimal_sizes = {k};
    } else if (w == report.max_value) {
      report.optimal_sizes.push_back(k);
    }
  }
  for (int k : report.optimal_sizes) {
    if (k == 0) {
      report.maximizers.emplace_back(cfg.m, 0);
      continue;
    }
    // Only windows attain best_window_f for delta > 0. For delta == 0 the
    // welfare is strictly increasing in k, so ties at k < m cannot occur and
    // the single size-m window covers that case too.
    for (int lo = 1; lo + k - 1 <= cfg.m; ++lo)
      report.maximizers.push_back(window_profile(cfg.m, lo, lo + k - 1));
  }
  return report;
}

}  // namespace flpart
