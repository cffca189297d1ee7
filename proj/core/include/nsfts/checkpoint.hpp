#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "nsfts/adaptive.hpp"

namespace nsfts {

/// Version of the checkpoint document; readers reject any other value.
inline constexpr int kCheckpointVersion = 1;
inline constexpr const char* kCheckpointFormat = "nsfts-checkpoint";

/// Rules as [{"lhs": i, "rhs": [..]}, ...] in ascending precedent order.
[[nodiscard]] nlohmann::json rulebase_to_json(const RuleBase& rules);
[[nodiscard]] std::string serialize_rulebase(const RuleBase& rules);

/// Full model state: universe, base triangles, perturbations, rules, residual window,
/// last forecast and options. Doubles round-trip exactly.
[[nodiscard]] nlohmann::json to_json(const NsftsModel& model);

/// Throws DataError on a wrong format tag, version mismatch or missing field.
[[nodiscard]] NsftsModel nsfts_from_json(const nlohmann::json& doc);

void save_checkpoint(const NsftsModel& model, const std::filesystem::path& path);
[[nodiscard]] NsftsModel load_checkpoint(const std::filesystem::path& path);

}  // namespace nsfts
