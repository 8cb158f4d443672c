#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "agisim/engine.hpp"

namespace agisim::cli {

inline constexpr int kSchemaVersion = 1;

/// Parses a run configuration. Every field is optional and defaults to the
/// SimulationConfig defaults; unknown fields are rejected with
/// Error(ParseError, "<path.to.field>"). A top-level "manifest" object is
/// accepted and ignored so emitted manifests can be fed back in.
SimulationConfig parse_config_text(std::string_view text);
SimulationConfig parse_config(const std::filesystem::path& path);

SimulationConfig config_from_json(const nlohmann::json& doc);
/// Fully resolved configuration; parse_config_text(dump) reproduces it.
nlohmann::json config_to_json(const SimulationConfig& config);

nlohmann::json strategy_to_json(const StrategySpec& spec);

std::string_view to_string(SecurityTiming timing);

}  // namespace agisim::cli
