#ifndef FLPART_JSON_IO_HPP
#define FLPART_JSON_IO_HPP

#include <string>

#include "core.hpp"
#include "dynamics.hpp"
#include "oracle.hpp"

namespace flpart {

// Config files are flat JSON: {"m": 5, "n": 100, "a": "790", "delta": "4",
// "mu1": "4"}. Numeric fields a/delta/mu1 are exact strings in decimal or p/q
// form (plain JSON integers are accepted; floats are rejected, never rounded).
// mu1 defaults to 0.
GameConfig game_from_json(const std::string& text);
std::string game_to_json(const GameConfig& cfg);

std::string equilibria_to_json(const GameConfig& cfg, const EquilibriumReport& report);
std::string welfare_to_json(const WelfareReport& report);
std::string profiles_to_json(const std::vector<Profile>& profiles);
std::string audit_to_json(const DynamicsAudit& audit);
std::string verify_to_json(const VerifyReport& report);
std::string batch_to_json(const BatchReport& report);

}  // namespace flpart

#endif  // FLPART_JSON_IO_HPP
