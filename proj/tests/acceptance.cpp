// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance <path-to-cli-binary> <work-dir>
//
// The chart-producing checks (1 and 10) drive the CLI binary; the
// analytic/brute-force criteria run against the core directly.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "dynamics.hpp"
#include "oracle.hpp"

using namespace flpart;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_work;
int g_failures = 0;

struct Criterion {
  int id;
  std::string detail;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool ok = true;

  explicit Criterion(int id_) : id(id_) {}
  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  void report(const std::string& title) {
    std::printf("[criterion %2d] %s  %s (%.2fs)%s%s\n", id, ok ? "PASS" : "FAIL", title.c_str(),
                seconds(), ok ? "" : " -- ", ok ? "" : detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }
};

int run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

std::set<std::string> bit_set(const std::vector<Profile>& profiles) {
  std::set<std::string> out;
  for (const Profile& p : profiles) out.insert(profile_bits(p));
  return out;
}

Profile random_nonzero_profile(int m, std::mt19937_64& rng) {
  Profile s(m, 0);
  do {
    for (auto& b : s) b = rng() & 1;
  } while (participant_count(s) == 0);
  return s;
}

// Assumption-satisfying config with odd k* >= 3: pick the target size and a
// non-integer 2a/(n delta) = k* + j/16, then solve for delta.
GameConfig sample_odd_config(std::mt19937_64& rng) {
  int m = 3 + static_cast<int>(rng() % 10);  // 3..12
  std::vector<int> odd_sizes;
  for (int k = 3; k <= m; k += 2) odd_sizes.push_back(k);
  int k_star = odd_sizes[rng() % odd_sizes.size()];
  Rational x = k_star + Rational(1 + static_cast<int>(rng() % 15), 16);
  int n = 1 + static_cast<int>(rng() % 1000);
  Rational a(1 + static_cast<int>(rng() % 10000), 1 + static_cast<int>(rng() % 20));
  a.canonicalize();
  Rational delta = 2 * a / (Rational(n) * x);
  Rational mu1(static_cast<int>(rng() % 21) - 10, 1 + static_cast<int>(rng() % 4));
  mu1.canonicalize();
  GameConfig cfg(m, n, a, delta, mu1);
  if (unique_odd_k(cfg) != k_star) throw std::logic_error("sampler missed its target size");
  return cfg;
}

// Switching rule written directly from the broadcast bounds.
Profile threshold_rule(const GameConfig& cfg, const Profile& prev) {
  BroadcastMessage msg = broadcast(cfg, prev);
  Thresholds t = thresholds(cfg, msg);
  Profile next = prev;
  for (int i = 1; i <= cfg.m; ++i) {
    Rational gap = abs(Rational(cfg.mean(i) - msg.mu_bar));
    if (!prev[i - 1]) {
      if (gap < t.join_bound) next[i - 1] = 1;
    } else {
      if (gap > t.leave_bound) next[i - 1] = 0;
    }
  }
  return next;
}

// --- criterion 1: admissible-k staircase over the separation sweep ---------

void criterion_1() {
  Criterion c(1);
  fs::path cfg_path = g_work / "cfg25.json";
  fs::path csv_path = g_work / "sweep.csv";
  write_file(cfg_path, R"({"m":25,"n":100,"a":"790","delta":"1"})");

  auto t0 = std::chrono::steady_clock::now();
  int exit_code = run_cli("sweep-delta " + cfg_path.string() +
                          " --delta-min 0.1 --delta-max 10 --steps 100 --out " + csv_path.string());
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(exit_code == 0, "sweep exited with " + std::to_string(exit_code));
  c.require(elapsed < 1.0, "sweep took " + std::to_string(elapsed) + "s, limit 1s");

  std::vector<std::string> lines = read_lines(csv_path);
  c.require(lines.size() == 101, "expected header + 100 rows, got " + std::to_string(lines.size()));
  c.require(!lines.empty() && lines[0] == "delta,k_values,unique,odd", "bad header");

  const Rational low_edge(79, 125);   // 2a/(nm)
  const Rational high_edge(79, 10);   // a/n
  const Rational two_a_over_n(79, 5);
  for (size_t row = 1; row < lines.size() && c.ok; ++row) {
    std::vector<std::string> fields = split(lines[row], ',');
    c.require(fields.size() == 4, "row " + std::to_string(row) + " malformed");
    if (!c.ok) break;
    Rational delta = parse_rational(fields[0]);
    std::vector<int> expected;
    if (delta < low_edge) {
      expected = {25};
    } else if (delta > high_edge) {
      expected = {1};
    } else {
      Rational x = two_a_over_n / delta;
      mpz_class floor_x;
      mpz_fdiv_q(floor_x.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
      int k = static_cast<int>(floor_x.get_si());
      if (x == Rational(floor_x)) {
        expected = {k - 1, k};  // two-valued at integer 2a/(n delta)
      } else {
        expected = {k};
      }
    }
    std::vector<int> got;
    for (const std::string& part : split(fields[1], ';'))
      if (!part.empty()) got.push_back(std::stoi(part));
    c.require(got == expected, "row " + std::to_string(row) + " delta=" + fields[0] +
                                   ": staircase mismatch");
    GameConfig probe(25, 100, 790, delta);
    c.require(admissible_k(probe) == expected,
              "row " + std::to_string(row) + ": engine disagrees with the closed form");
    bool unique = expected.size() == 1;
    c.require(fields[2] == (unique ? "1" : "0"), "row " + std::to_string(row) + ": unique flag");
    bool odd = unique && expected[0] % 2 == 1;
    c.require(fields[3] == (odd ? "1" : "0"), "row " + std::to_string(row) + ": odd flag");
  }
  c.report("separation staircase: k=25 below 0.632, floor(15.8/delta) inside, k=1 above 7.9");
}

// --- criteria 2-4, 12: equilibrium structure over 50 sampled configs -------

std::vector<GameConfig> g_odd_configs;
std::vector<std::vector<Profile>> g_odd_brute;

void criterion_2() {
  Criterion c(2);
  std::mt19937_64 rng(424242);
  OracleBudget budget;
  for (int i = 0; i < 50; ++i) {
    GameConfig cfg = sample_odd_config(rng);
    int k_star = *unique_odd_k(cfg);
    EquilibriumReport analytic = enumerate_equilibria(cfg);
    c.require(static_cast<int>(analytic.total_count()) == cfg.m - k_star + 2,
              "config " + std::to_string(i) + ": count != m - k* + 2");
    std::vector<Profile> brute = brute_equilibria(cfg, budget);
    std::set<std::string> analytic_set = bit_set(analytic.type2_profiles);
    analytic_set.insert(std::string(cfg.m, '0'));
    c.require(bit_set(brute) == analytic_set,
              "config " + std::to_string(i) + ": brute force disagrees");
    g_odd_configs.push_back(cfg);
    g_odd_brute.push_back(std::move(brute));
  }
  c.require(c.seconds() < 10.0, "took " + std::to_string(c.seconds()) + "s, limit 10s");
  c.report("50 odd-k* configs: m - k* + 2 equilibria, identical to brute force");
}

void criterion_3() {
  Criterion c(3);
  for (size_t i = 0; i < g_odd_brute.size(); ++i) {
    for (const Profile& s : g_odd_brute[i]) {
      c.require(is_consecutive_participation(s),
                "config " + std::to_string(i) + ": equilibrium " + profile_bits(s) + " has a hole");
    }
  }
  c.report("no brute-forced equilibrium strands an outsider between participants");
}

void criterion_4() {
  Criterion c(4);
  OracleBudget budget;
  for (size_t i = 0; i < g_odd_configs.size(); ++i) {
    const GameConfig& cfg = g_odd_configs[i];
    WelfareReport brute = brute_welfare_max(cfg, budget);
    c.require(bit_set(brute.maximizers) == bit_set(enumerate_equilibria(cfg).type2_profiles),
              "config " + std::to_string(i) + ": welfare maximizers != equilibrium windows");
  }
  c.report("welfare maximizers equal the type-2 equilibrium set on all 50 configs");
}

void criterion_5() {
  Criterion c(5);
  std::mt19937_64 rng(5150);
  for (int i = 0; i < 1000; ++i) {
    GameConfig cfg = sample_config(rng);
    Profile s = random_nonzero_profile(cfg.m, rng);
    int k = participant_count(s);
    Rational expected = Rational(k - cfg.m - 1) * cfg.a / cfg.n - f_omega(cfg, participant_set(s));
    c.require(social_welfare(cfg, s) == expected, "pair " + std::to_string(i) + ": identity broken");
  }
  c.report("1000 random pairs: welfare summation equals (|O|-m-1)a/n - f(O) exactly");
}

void criterion_6() {
  Criterion c(6);
  struct Span { const char* delta; int k_star; const char* label; };
  for (Span span : {Span{"1", 10, "k*=m"}, Span{"3", 5, "k*<m"}, Span{"9", 1, "k*=1"}}) {
    GameConfig cfg(10, 100, 790, parse_rational(span.delta));
    c.require(admissible_k(cfg) == std::vector<int>{span.k_star},
              std::string(span.label) + ": unexpected admissible set");
    for (std::uint32_t mask = 1; mask < (1u << 10); ++mask) {
      Profile s(10, 0);
      for (int i = 0; i < 10; ++i) s[i] = (mask >> i) & 1;
      if (myopic_step(cfg, s) != threshold_rule(cfg, s)) {
        c.require(false, std::string(span.label) + ": mismatch at " + profile_bits(s));
        break;
      }
    }
  }
  c.report("myopic step == broadcast threshold rule on all 2^10 nonempty profiles x 3 configs");
}

std::vector<std::pair<GameConfig, DynamicsAudit>> g_audits;

void criterion_7() {
  Criterion c(7);
  OracleBudget budget;
  for (const char* d : {"7/5", "3", "8"}) {  // k* = 11, 5, 1
    GameConfig cfg(12, 100, 790, parse_rational(d));
    DynamicsAudit audit = brute_dynamics_audit(cfg, budget);
    c.require(audit.initial_states == 4096, "wrong state count");
    c.require(audit.unresolved == 0, std::string("delta=") + d + ": unresolved trajectories");
    c.require(audit.type1 + audit.type2 + audit.cycle == 4096,
              std::string("delta=") + d + ": classification does not cover all starts");
    if (*unique_odd_k(cfg) > 1)
      c.require(audit.type1 == 1,
                std::string("delta=") + d + ": a nonzero start drained to the all-out state");
    c.require(audit.max_stages_to_terminal <= audit.stage_budget,
              std::string("delta=") + d + ": terminal after the m + k* + 2 budget");
    g_audits.emplace_back(cfg, audit);
  }
  c.require(c.seconds() < 30.0, "took " + std::to_string(c.seconds()) + "s, limit 30s");
  c.report("3 configs at m=12: all 4096 starts classified within m + k* + 2 stages");
}

void criterion_8() {
  Criterion c(8);
  for (auto& [cfg, audit] : g_audits) {
    c.require(audit.consecutive_bound_ok && audit.max_stage_to_consecutive <= audit.consecutive_bound,
              "delta=" + rational_str(cfg.delta) + ": consecutive formation after ceil((k*+1)/2)");
  }
  c.require(!g_audits.empty(), "no audits collected");
  c.report("every nonzero start forms a consecutive participation by stage ceil((k*+1)/2)");
}

void criterion_9() {
  Criterion c(9);
  GameConfig cfg(5, 100, 790, 4, 4);

  Trajectory cycle = simulate(cfg, profile_from_bits("01001", 5), 50);
  c.require(cycle.terminal == Terminal::NeighborhoodCycle, "trace A: not a cycle");
  c.require(cycle.stages_to_terminal == 1, "trace A: cycle does not start at stage 1");
  c.require(cycle.witness && profile_bits(*cycle.witness) == "01110", "trace A: wrong witness");
  const char* bits_a[3] = {"01001", "00110", "01111"};
  const char* costs_a[3][5] = {
      {"79/10", "199/20", "79/10", "79/10", "199/20"},
      {"79/10", "79/10", "119/20", "119/20", "79/10"},
      {"79/10", "319/40", "159/40", "159/40", "319/40"},
  };
  c.require(cycle.stages.size() == 3, "trace A: wrong stage count");
  for (size_t t = 0; t < cycle.stages.size() && c.ok; ++t) {
    c.require(profile_bits(cycle.stages[t].profile) == bits_a[t], "trace A: profile at stage " + std::to_string(t));
    c.require(cycle.stages[t].message.mu_bar == 14, "trace A: broadcast mean");
    for (int i = 0; i < 5; ++i)
      c.require(cycle.stages[t].costs[i] == parse_rational(costs_a[t][i]),
                "trace A: cost of agent " + std::to_string(i + 1) + " at stage " + std::to_string(t));
  }

  Trajectory fixed = simulate(cfg, profile_from_bits("11000", 5), 50);
  c.require(fixed.terminal == Terminal::Type2Fixed, "trace B: not a fixed point");
  c.require(fixed.stages_to_terminal == 1, "trace B: fixed point not reached after one step");
  c.require(fixed.stages.size() == 2 && profile_bits(fixed.stages[1].profile) == "11100",
            "trace B: wrong fixed profile");
  const char* costs_b[2][5] = {
      {"119/20", "119/20", "79/10", "79/10", "79/10"},
      {"199/30", "79/30", "199/30", "79/10", "79/10"},
  };
  for (size_t t = 0; t < 2 && c.ok; ++t)
    for (int i = 0; i < 5; ++i)
      c.require(fixed.stages[t].costs[i] == parse_rational(costs_b[t][i]),
                "trace B: cost of agent " + std::to_string(i + 1) + " at stage " + std::to_string(t));
  c.report("hand-traced m=5 fixtures: period-2 cycle and one-step fixed point, exact costs");
}

void criterion_10() {
  Criterion c(10);
  fs::path cfg_path = g_work / "cfg20.json";
  write_file(cfg_path, R"({"m":20,"n":100,"a":"790","delta":"1"})");

  for (const std::string& init : {std::string("sparse:11"), std::string("dense:11")}) {
    std::string tag = init.substr(0, init.find(':'));
    fs::path csv_path = g_work / (tag + ".csv");
    int exit_code = run_cli("simulate " + cfg_path.string() + " --s0 " + init + " --svg --out " +
                            csv_path.string());
    c.require(exit_code == 0, init + ": exit " + std::to_string(exit_code));
    std::vector<std::string> lines = read_lines(csv_path);
    c.require(lines.size() >= 2, init + ": empty CSV");
    if (!c.ok) continue;
    std::vector<std::string> terminal = split(lines.back(), ',');
    c.require(terminal.size() == 4 && terminal[0] == "# terminal", init + ": missing terminal line");
    if (!c.ok) continue;
    c.require(terminal[1] == "Type2Fixed" || terminal[1] == "NeighborhoodCycle",
              init + ": terminal " + terminal[1]);
    c.require(std::stoi(terminal[2]) <= 10, init + ": " + terminal[2] + " stages, limit 10");
    const std::string& witness = terminal[3];
    c.require(witness.size() == 20, init + ": witness length");
    int ones = 0;
    for (char b : witness) ones += b == '1';
    c.require(ones == 15, init + ": witness window holds " + std::to_string(ones) + " agents, want 15");
    c.require(is_consecutive_participation(profile_from_bits(witness, 20)),
              init + ": witness is not a window");
    int recorded_stages = (static_cast<int>(lines.size()) - 2) / 20;
    for (int t = 0; t < recorded_stages; ++t) {
      fs::path svg = g_work / (tag + ".stage" + std::to_string(t) + ".svg");
      c.require(fs::exists(svg) && fs::file_size(svg) > 0, init + ": missing " + svg.string());
    }
    fs::path overview = g_work / (tag + ".overview.svg");
    c.require(fs::exists(overview) && fs::file_size(overview) > 0, init + ": missing overview SVG");

    // identical inputs must reproduce the CSV byte for byte
    fs::path again = g_work / (tag + "_again.csv");
    run_cli("simulate " + cfg_path.string() + " --s0 " + init + " --out " + again.string());
    c.require(read_lines(csv_path) == read_lines(again) && fs::file_size(csv_path) == fs::file_size(again),
              init + ": rerun produced different CSV bytes");
  }
  c.report("m=20 k*=15 seeded runs settle on a 15-window within 10 stages; CSV + SVG emitted");
}

void criterion_11() {
  Criterion c(11);
  std::mt19937_64 rng(1111);
  for (int trial = 0; trial < 20; ++trial) {
    GameConfig cfg = sample_config(rng);
    Profile s(cfg.m, 0);
    for (int t = 0; t < 10; ++t) {
      s = myopic_step(cfg, s);
      c.require(participant_count(s) == 0, "config " + std::to_string(trial) +
                                               ": someone joined from the all-out state at stage " +
                                               std::to_string(t + 1));
    }
  }
  c.report("the all-out state absorbs for 10 stages on 20 random configs");
}

void criterion_12() {
  Criterion c(12);
  for (size_t i = 0; i < g_odd_configs.size(); ++i) {
    for (const Profile& target : enumerate_equilibria(g_odd_configs[i]).type2_profiles) {
      c.require(one_stage_deviation_check(g_odd_configs[i], target),
                "config " + std::to_string(i) + ": deviation check failed at " + profile_bits(target));
    }
  }
  c.report("grim-trigger one-stage deviation check passes for every type-2 equilibrium");
}

void criterion_13() {
  Criterion c(13);
  std::mt19937_64 rng(1313);
  for (int trial = 0; trial < 20; ++trial) {
    GameConfig base = sample_config(rng);
    for (const char* shift : {"1000", "-1000"}) {
      GameConfig moved(base.m, base.n, base.a, base.delta, base.mu1 + parse_rational(shift));
      c.require(admissible_k(base) == admissible_k(moved), "admissible sets moved");
      c.require(bit_set(enumerate_equilibria(base).type2_profiles) ==
                    bit_set(enumerate_equilibria(moved).type2_profiles),
                "equilibrium sets moved");
      WelfareReport wb = welfare_maximizers(base);
      WelfareReport wm = welfare_maximizers(moved);
      c.require(wb.max_value == wm.max_value && bit_set(wb.maximizers) == bit_set(wm.maximizers),
                "welfare maximizers moved");
      for (int run = 0; run < 10; ++run) {
        Profile s0 = random_nonzero_profile(base.m, rng);
        Trajectory ta = simulate(base, s0, default_max_stages(base));
        Trajectory tb = simulate(moved, s0, default_max_stages(moved));
        c.require(ta.terminal == tb.terminal && ta.stages_to_terminal == tb.stages_to_terminal &&
                      ta.stages.size() == tb.stages.size(),
                  "trajectory shape moved");
        for (size_t t = 0; t < ta.stages.size() && c.ok; ++t) {
          c.require(ta.stages[t].profile == tb.stages[t].profile, "trajectory profiles moved");
          for (int i = 0; i < base.m; ++i)
            c.require(ta.stages[t].costs[i] == tb.stages[t].costs[i], "trajectory costs moved");
        }
      }
    }
  }
  c.report("shifting mu1 by +/-1000 leaves equilibria, welfare, and trajectories unchanged");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <work-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_work = argv[2];
  fs::create_directories(g_work);

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  criterion_13();

  if (g_failures == 0) {
    std::printf("acceptance: all 13 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
