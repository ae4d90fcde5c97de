// flpart command-line tool: equilibrium reports, delta sweeps, myopic-dynamics
// simulation with CSV/SVG output, and brute-force verification. All game
// arithmetic happens behind the flpart C API; this tool only parses arguments,
// shuttles exact-rational strings, and formats output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flpart/flpart.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitUnresolved = 3;

struct OwnedStr {
  char* ptr = nullptr;
  ~OwnedStr() { flp_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
  explicit operator bool() const { return ptr != nullptr; }
};

using GamePtr = std::unique_ptr<flp_game, decltype(&flp_game_free)>;
using TrajPtr = std::unique_ptr<flp_traj, decltype(&flp_traj_free)>;

[[noreturn]] void fail(int code, const std::string& message) {
  std::cerr << "flpart: " << message << "\n";
  std::exit(code);
}

void check(flp_status status, int exit_code = kExitUsage) {
  if (status != FLP_OK)
    fail(exit_code, std::string(flp_status_name(status)) + ": " + flp_last_error());
}

GamePtr load_game(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) fail(kExitUsage, "cannot read config file '" + config_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  flp_game* game = nullptr;
  check(flp_game_from_json(buffer.str().c_str(), &game));
  return GamePtr(game, flp_game_free);
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(kExitUsage, "cannot write '" + out_path + "'");
  out << content;
}

// Canonical rationals are "p" or "p/q"; CSV wants the parts separately.
std::pair<std::string, std::string> split_rational(const std::string& rat) {
  auto slash = rat.find('/');
  if (slash == std::string::npos) return {rat, "1"};
  return {rat.substr(0, slash), rat.substr(slash + 1)};
}

std::string decimal(const std::string& rat, int digits) {
  OwnedStr dec;
  check(flp_rat_to_decimal(rat.c_str(), digits, &dec.ptr));
  return dec.str();
}

std::string config_summary(const flp_game* game) {
  OwnedStr json_text;
  check(flp_game_to_json(game, &json_text.ptr));
  auto obj = nlohmann::json::parse(json_text.str());
  std::ostringstream out;
  out << "m=" << obj["m"].get<int>() << " n=" << obj["n"].get<int>()
      << " a=" << obj["a"].get<std::string>() << " delta=" << obj["delta"].get<std::string>()
      << " mu1=" << obj["mu1"].get<std::string>();
  return out.str();
}

// Initial profile spec: an explicit bitstring, or seeded "sparse:SEED" /
// "dense:SEED" draws with participation probability 1/5 resp. 3/5.
std::string initial_profile(const std::string& spec, int m) {
  auto seeded = [&](const std::string& prefix, int in_below) -> std::optional<std::string> {
    if (spec.rfind(prefix, 0) != 0) return std::nullopt;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(prefix.size()));
    } catch (...) {
      fail(kExitUsage, "bad seed in '" + spec + "'");
    }
    std::mt19937_64 rng(seed);
    std::string bits(m, '0');
    for (int i = 0; i < m; ++i)
      if (static_cast<int>(rng() % 5) < in_below) bits[i] = '1';
    return bits;
  };
  if (auto bits = seeded("sparse:", 1)) return *bits;
  if (auto bits = seeded("dense:", 3)) return *bits;
  if (static_cast<int>(spec.size()) != m)
    fail(kExitUsage, "initial profile must have length m=" + std::to_string(m));
  for (char c : spec)
    if (c != '0' && c != '1') fail(kExitUsage, "initial profile must be a 0/1 string");
  return spec;
}

// --- SVG emission (one bar chart per stage, plus an overview strip) --------

std::string stage_svg(const std::string& bits, int stage, int omega_size) {
  const int m = static_cast<int>(bits.size());
  const int bar_w = 16, gap = 4, left = 30, bottom = 110, top = 24;
  const int width = left + m * (bar_w + gap) + 10;
  const int height = bottom + 30;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n";
  svg << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "  <text x=\"" << left << "\" y=\"16\" font-family=\"monospace\" font-size=\"12\">stage "
      << stage << "  participants " << omega_size << "</text>\n";
  for (int i = 0; i < m; ++i) {
    int h = bits[i] == '1' ? bottom - top : 4;
    int x = left + i * (bar_w + gap);
    svg << "  <rect x=\"" << x << "\" y=\"" << bottom - h << "\" width=\"" << bar_w << "\" height=\""
        << h << "\" fill=\"" << (bits[i] == '1' ? "#2d6cdf" : "#c9d4e8") << "\"/>\n";
    if ((i + 1) % 5 == 0 || i == 0)
      svg << "  <text x=\"" << x << "\" y=\"" << bottom + 16
          << "\" font-family=\"monospace\" font-size=\"10\">" << i + 1 << "</text>\n";
  }
  svg << "  <line x1=\"" << left - 4 << "\" y1=\"" << bottom << "\" x2=\"" << width - 6
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string overview_svg(const std::vector<std::string>& stage_bits) {
  const int m = stage_bits.empty() ? 0 : static_cast<int>(stage_bits[0].size());
  const int cell = 12, left = 46, top = 20;
  const int width = left + m * cell + 10;
  const int height = top + static_cast<int>(stage_bits.size()) * cell + 10;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n";
  svg << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "  <text x=\"4\" y=\"14\" font-family=\"monospace\" font-size=\"11\">stage / agent</text>\n";
  for (size_t t = 0; t < stage_bits.size(); ++t) {
    int y = top + static_cast<int>(t) * cell;
    svg << "  <text x=\"4\" y=\"" << y + cell - 2 << "\" font-family=\"monospace\" font-size=\"10\">"
        << t << "</text>\n";
    for (int i = 0; i < m; ++i) {
      svg << "  <rect x=\"" << left + i * cell << "\" y=\"" << y << "\" width=\"" << cell - 1
          << "\" height=\"" << cell - 1 << "\" fill=\""
          << (stage_bits[t][i] == '1' ? "#2d6cdf" : "#eef1f6") << "\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string svg_base(const std::string& out_path) {
  if (out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv")
    return out_path.substr(0, out_path.size() - 4);
  return out_path;
}

// --- subcommands ------------------------------------------------------------

int cmd_equilibria(const std::string& config_path, const std::string& out_path) {
  GamePtr game = load_game(config_path);
  OwnedStr report_json;
  check(flp_equilibria_json(game.get(), &report_json.ptr));
  auto report = nlohmann::json::parse(report_json.str());

  std::ostringstream out;
  out << "config: " << config_summary(game.get()) << "\n";
  out << "admissible k:";
  for (const auto& k : report["admissible_k"]) out << " " << k.get<int>();
  out << "\n";
  bool unique_odd = report["unique_odd"].get<bool>();
  out << "assumption (unique odd k*): " << (unique_odd ? "yes" : "no") << "\n";
  out << "type-1 equilibrium: " << report["type1_profile"].get<std::string>() << "\n";
  const auto& windows = report["type2_profiles"];
  out << "type-2 windows (" << windows.size() << "):\n";
  for (const auto& w : windows) out << "  " << w.get<std::string>() << "\n";
  out << "total equilibria: " << report["total_count"].get<std::uint64_t>();
  if (unique_odd) {
    int k_star = report["admissible_k"][0].get<int>();
    out << " (m - k* + 2 = " << flp_game_m(game.get()) - k_star + 2 << ")";
  }
  out << "\n";
  write_output(out_path, out.str());
  return kExitOk;
}

int cmd_sweep_delta(const std::string& config_path, const std::string& delta_min,
                    const std::string& delta_max, int steps, const std::string& out_path) {
  GamePtr game = load_game(config_path);
  OwnedStr config_json;
  check(flp_game_to_json(game.get(), &config_json.ptr));
  auto cfg = nlohmann::json::parse(config_json.str());
  const std::string a = cfg["a"].get<std::string>();
  const int m = cfg["m"].get<int>();
  const int n = cfg["n"].get<int>();

  OwnedStr lo_canon, hi_canon;
  check(flp_rat_parse(delta_min.c_str(), &lo_canon.ptr));
  check(flp_rat_parse(delta_max.c_str(), &hi_canon.ptr));
  int lo_sign = 0, order = 0;
  check(flp_rat_cmp(lo_canon.ptr, "0", &lo_sign));
  check(flp_rat_cmp(lo_canon.ptr, hi_canon.ptr, &order));
  if (lo_sign <= 0 || order > 0 || steps < 1)
    fail(kExitUsage, "sweep needs 0 < delta-min <= delta-max and steps >= 1");

  std::ostringstream csv;
  csv << "delta,k_values,unique,odd\n";
  for (int j = 0; j < steps; ++j) {
    OwnedStr delta;
    check(flp_rat_grid_point(lo_canon.ptr, hi_canon.ptr, steps, j, &delta.ptr));
    flp_game* sample = nullptr;
    check(flp_game_new(m, n, a.c_str(), delta.ptr, nullptr, &sample));
    GamePtr sample_guard(sample, flp_game_free);
    int ks[2] = {0, 0};
    int count = 0, assumption = 0;
    check(flp_admissible_k(sample, ks, 2, &count));
    check(flp_assumption_odd_unique(sample, &assumption));
    csv << delta.str() << ",";
    for (int i = 0; i < count; ++i) csv << (i ? ";" : "") << ks[i];
    csv << "," << (count == 1 ? 1 : 0) << "," << assumption << "\n";
  }
  write_output(out_path, csv.str());
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& s0_spec, int max_stages,
                 const std::string& out_path, bool svg, int precision) {
  GamePtr game = load_game(config_path);
  const int m = flp_game_m(game.get());
  std::string s0 = initial_profile(s0_spec, m);

  flp_traj* traj_raw = nullptr;
  check(flp_simulate(game.get(), s0.c_str(), max_stages, &traj_raw));
  TrajPtr traj(traj_raw, flp_traj_free);

  std::ostringstream csv;
  csv << "stage,agent,strategy,cost_num,cost_den,omega_size,mu_bar_num,mu_bar_den,cost_dec\n";
  std::vector<std::string> stage_bits;
  const int stages = flp_traj_stage_count(traj.get());
  for (int t = 0; t < stages; ++t) {
    OwnedStr bits, mu_bar;
    int omega_size = 0;
    check(flp_traj_profile(traj.get(), t, &bits.ptr));
    check(flp_traj_broadcast(traj.get(), t, &omega_size, &mu_bar.ptr));
    auto [mu_num, mu_den] = split_rational(mu_bar.str());
    stage_bits.push_back(bits.str());
    for (int i = 1; i <= m; ++i) {
      OwnedStr cost;
      check(flp_traj_cost(traj.get(), t, i, &cost.ptr));
      auto [cost_num, cost_den] = split_rational(cost.str());
      csv << t << "," << i << "," << bits.str()[i - 1] << "," << cost_num << "," << cost_den << ","
          << omega_size << "," << mu_num << "," << mu_den << "," << decimal(cost.str(), precision)
          << "\n";
    }
  }
  flp_terminal terminal = flp_traj_terminal(traj.get());
  OwnedStr witness;
  check(flp_traj_witness(traj.get(), &witness.ptr));
  csv << "# terminal," << flp_terminal_name(terminal) << "," << flp_traj_stages_to_terminal(traj.get())
      << "," << witness.str() << "\n";
  write_output(out_path, csv.str());

  if (svg) {
    if (out_path.empty()) fail(kExitUsage, "--svg needs --out to derive file names");
    std::string base = svg_base(out_path);
    for (int t = 0; t < stages; ++t) {
      int omega_size = 0;
      OwnedStr mu_bar;
      check(flp_traj_broadcast(traj.get(), t, &omega_size, &mu_bar.ptr));
      std::ofstream f(base + ".stage" + std::to_string(t) + ".svg", std::ios::binary);
      f << stage_svg(stage_bits[t], t, omega_size);
    }
    std::ofstream f(base + ".overview.svg", std::ios::binary);
    f << overview_svg(stage_bits);
  }

  if (terminal == FLP_TERMINAL_UNRESOLVED) {
    std::cerr << "flpart: trajectory unresolved after " << stages - 1 << " recorded stages\n";
    return kExitUnresolved;
  }
  return kExitOk;
}

void render_audit(std::ostringstream& out, const nlohmann::json& audit) {
  out << "  dynamics audit: " << audit["initial_states"].get<std::uint64_t>() << " initial states -> "
      << "type1 " << audit["type1_fixed"].get<std::uint64_t>() << ", type2 "
      << audit["type2_fixed"].get<std::uint64_t>() << ", cycle "
      << audit["neighborhood_cycle"].get<std::uint64_t>() << ", unresolved "
      << audit["unresolved"].get<std::uint64_t>() << "\n";
  out << "    max stages to terminal " << audit["max_stages_to_terminal"].get<int>()
      << " (budget " << audit["stage_budget"].get<int>() << "); consecutive by stage "
      << audit["max_stage_to_consecutive"].get<int>() << " (bound "
      << audit["consecutive_bound"].get<int>() << ")\n";
}

void render_mismatches(std::ostringstream& out, const nlohmann::json& report, const char* key,
                       const char* label) {
  if (!report.contains(key)) return;
  out << "    " << label << ":";
  for (const auto& p : report[key]) out << " " << p.get<std::string>();
  out << "\n";
}

int render_verify_report(const nlohmann::json& report, const std::string& header,
                         const std::string& out_path) {
  std::ostringstream out;
  out << header << "\n";
  out << "  equilibria: " << report["equilibrium_count"].get<std::uint64_t>()
      << " profiles, analytic agreement: " << (report["equilibria_agree"].get<bool>() ? "yes" : "NO")
      << "\n";
  render_mismatches(out, report, "equilibria_only_brute", "only brute force found");
  render_mismatches(out, report, "equilibria_only_analytic", "only analytic enumeration lists");
  out << "  welfare: max W = " << report["max_welfare"].get<std::string>()
      << ", maximizer agreement: " << (report["welfare_agree"].get<bool>() ? "yes" : "NO") << "\n";
  render_mismatches(out, report, "welfare_only_brute", "only brute force found");
  render_mismatches(out, report, "welfare_only_analytic", "only analytic search lists");
  if (report["audit_run"].get<bool>()) render_audit(out, report["audit"]);
  bool pass = report["pass"].get<bool>();
  out << (pass ? "PASS" : "FAIL") << "\n";
  write_output(out_path, out.str());
  return pass ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const std::string& config_path, std::uint64_t seed, int count, int budget_m,
               bool override_budget, const std::string& out_path) {
  if (count > 0) {
    OwnedStr report_json;
    check(flp_verify_batch_json(seed, count, budget_m, &report_json.ptr));
    auto report = nlohmann::json::parse(report_json.str());
    std::ostringstream out;
    out << "verify batch seed=" << seed << " count=" << count << "\n";
    out << "  failures: " << report["failures"].get<int>() << "\n";
    for (const auto& f : report["failed"]) {
      const auto& cfg = f["config"];
      out << "  counterexample: m=" << cfg["m"].get<int>() << " n=" << cfg["n"].get<int>()
          << " a=" << cfg["a"].get<std::string>() << " delta=" << cfg["delta"].get<std::string>()
          << " mu1=" << cfg["mu1"].get<std::string>() << "\n";
    }
    bool pass = report["pass"].get<bool>();
    out << (pass ? "PASS" : "FAIL") << " (seed=" << seed << ")\n";
    write_output(out_path, out.str());
    return pass ? kExitOk : kExitVerifyFailed;
  }
  if (config_path.empty()) fail(kExitUsage, "verify needs a config file or --count for a batch");
  GamePtr game = load_game(config_path);
  OwnedStr report_json;
  check(flp_verify_config_json(game.get(), budget_m, override_budget ? 1 : 0, &report_json.ptr));
  return render_verify_report(nlohmann::json::parse(report_json.str()),
                              "verify " + config_summary(game.get()), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"federated-learning participation game: equilibria, welfare, myopic dynamics"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  int precision = 6;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* cfg = cmd->add_option("config,--config", config_path, "JSON config file");
    if (config_required) cfg->required();
    cmd->add_option("--out", out_path, "output path (default stdout)");
  };

  auto* equilibria = app.add_subcommand("equilibria", "stage-game equilibrium report");
  add_common(equilibria, true);

  auto* sweep = app.add_subcommand("sweep-delta", "admissible k across a data-separation range");
  add_common(sweep, true);
  std::string delta_min, delta_max;
  int steps = 1;
  sweep->add_option("--delta-min", delta_min, "range start (exact rational)")->required();
  sweep->add_option("--delta-max", delta_max, "range end (exact rational)")->required();
  sweep->add_option("--steps", steps, "number of samples, endpoints included")->required();

  auto* simulate = app.add_subcommand("simulate", "myopic-strategy trajectory as CSV (optionally SVG)");
  add_common(simulate, true);
  std::string s0_spec;
  int max_stages = 0;
  bool svg = false;
  simulate->add_option("--s0", s0_spec, "initial profile: bitstring, sparse:SEED, or dense:SEED")
      ->required();
  simulate->add_option("--max-stages", max_stages, "stage limit (default m + k* + 2)");
  simulate->add_flag("--svg", svg, "emit per-stage bar charts and an overview strip");
  simulate->add_option("--precision", precision, "decimal digits for the cost_dec column");

  auto* verify = app.add_subcommand("verify", "brute-force agreement checks");
  add_common(verify, false);
  std::uint64_t seed = 0;
  int count = 0, budget_m = 0;
  bool override_budget = false;
  verify->add_option("--seed", seed, "batch RNG seed");
  verify->add_option("--count", count, "run a seeded batch of sampled configs");
  verify->add_option("--budget-m", budget_m, "enumeration budget (default 12, cap 22)");
  verify->add_flag("--override-budget", override_budget, "bypass the enumeration budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : kExitOk;
  }

  if (equilibria->parsed()) return cmd_equilibria(config_path, out_path);
  if (sweep->parsed()) return cmd_sweep_delta(config_path, delta_min, delta_max, steps, out_path);
  if (simulate->parsed())
    return cmd_simulate(config_path, s0_spec, max_stages, out_path, svg, precision);
  if (verify->parsed())
    return cmd_verify(config_path, seed, count, budget_m, override_budget, out_path);
  return kExitUsage;
}
