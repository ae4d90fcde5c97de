#include "json_io.hpp"

#include <json.hpp>

#include "error.hpp"

namespace flpart {

namespace {

using nlohmann::json;

Rational rational_field(const json& obj, const char* key, const Rational* fallback) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw Error(ErrorCode::Parse, std::string("config is missing '") + key + "'");
  }
  const json& v = obj.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  throw Error(ErrorCode::Parse,
              std::string("config field '") + key + "' must be an exact string like \"79/10\" or \"0.632\"");
}

int int_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number_integer())
    throw Error(ErrorCode::Parse, std::string("config field '") + key + "' must be an integer");
  return obj.at(key).get<int>();
}

json profiles_json(const std::vector<Profile>& profiles) {
  json arr = json::array();
  for (const Profile& p : profiles) arr.push_back(profile_bits(p));
  return arr;
}

json audit_json(const DynamicsAudit& audit) {
  return json{{"initial_states", audit.initial_states},
              {"type1_fixed", audit.type1},
              {"type2_fixed", audit.type2},
              {"neighborhood_cycle", audit.cycle},
              {"unresolved", audit.unresolved},
              {"stage_budget", audit.stage_budget},
              {"max_stages_to_terminal", audit.max_stages_to_terminal},
              {"consecutive_bound", audit.consecutive_bound},
              {"max_stage_to_consecutive", audit.max_stage_to_consecutive},
              {"consecutive_bound_ok", audit.consecutive_bound_ok},
              {"ok", audit.ok()}};
}

json verify_json(const VerifyReport& report) {
  json j{{"pass", report.pass()},
         {"equilibria_agree", report.equilibria_agree},
         {"equilibrium_count", report.equilibrium_count},
         {"welfare_agree", report.welfare_agree},
         {"max_welfare", report.max_welfare},
         {"audit_run", report.audit_run}};
  if (!report.equilibria_only_brute.empty()) j["equilibria_only_brute"] = report.equilibria_only_brute;
  if (!report.equilibria_only_analytic.empty())
    j["equilibria_only_analytic"] = report.equilibria_only_analytic;
  if (!report.welfare_only_brute.empty()) j["welfare_only_brute"] = report.welfare_only_brute;
  if (!report.welfare_only_analytic.empty()) j["welfare_only_analytic"] = report.welfare_only_analytic;
  if (report.audit_run) j["audit"] = audit_json(report.audit);
  return j;
}

}  // namespace

GameConfig game_from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw Error(ErrorCode::Parse, "config must be a JSON object");
  Rational zero = 0;
  return GameConfig(int_field(obj, "m"), int_field(obj, "n"), rational_field(obj, "a", nullptr),
                    rational_field(obj, "delta", nullptr), rational_field(obj, "mu1", &zero));
}

std::string game_to_json(const GameConfig& cfg) {
  json j{{"m", cfg.m},
         {"n", cfg.n},
         {"a", rational_str(cfg.a)},
         {"delta", rational_str(cfg.delta)},
         {"mu1", rational_str(cfg.mu1)}};
  return j.dump();
}

std::string equilibria_to_json(const GameConfig& cfg, const EquilibriumReport& report) {
  json j{{"has_type1", report.has_type1},
         {"type1_profile", std::string(cfg.m, '0')},
         {"admissible_k", report.admissible_k},
         {"unique_odd", report.unique_odd},
         {"type2_profiles", profiles_json(report.type2_profiles)},
         {"total_count", report.total_count()}};
  return j.dump();
}

std::string welfare_to_json(const WelfareReport& report) {
  json j{{"max_value", rational_str(report.max_value)},
         {"optimal_sizes", report.optimal_sizes},
         {"maximizers", profiles_json(report.maximizers)}};
  return j.dump();
}

std::string profiles_to_json(const std::vector<Profile>& profiles) {
  return profiles_json(profiles).dump();
}

std::string audit_to_json(const DynamicsAudit& audit) {
  return audit_json(audit).dump();
}

std::string verify_to_json(const VerifyReport& report) {
  return verify_json(report).dump();
}

std::string batch_to_json(const BatchReport& report) {
  json failures = json::array();
  for (const auto& [cfg, r] : report.failed) {
    failures.push_back(json{{"config", json::parse(game_to_json(cfg))}, {"report", verify_json(r)}});
  }
  json j{{"seed", report.seed},
         {"count", report.count},
         {"failures", report.failures},
         {"pass", report.pass()},
         {"failed", failures}};
  return j.dump();
}

}  // namespace flpart
