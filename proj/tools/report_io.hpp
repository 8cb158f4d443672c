#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "agisim/analysis.hpp"
#include "agisim/engine.hpp"

namespace agisim::cli {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double x);

inline constexpr const char* kTrajectoryHeader =
    "episode,t,player,action,r,s,T,K,S,V,sanction_level,stage_utility,"
    "audited,flagged";

void write_trajectory_header(std::ostream& out);
/// One row per (step, player), rows ordered by t then player id.
void write_trajectory_rows(std::ostream& out, std::size_t episode,
                           const Trajectory& trajectory);

nlohmann::json to_json(const Estimate& e);
nlohmann::json to_json(const EnsembleStats& stats);
nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const DeviationReport& report);
nlohmann::json to_json(const DefectionRateReport& report);

void write_text(std::ostream& out, const ConditionReport& report,
                const DefectionRateReport* bound = nullptr);
void write_text(std::ostream& out, const DeviationReport& report);

}  // namespace agisim::cli
