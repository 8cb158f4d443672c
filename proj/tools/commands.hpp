#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "agisim/analysis.hpp"
#include "agisim/engine.hpp"

namespace agisim::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kRuntimeError = 3 };

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

std::string build_identifier();

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> episodes;
};

/// Applies overrides and re-validates.
SimulationConfig resolve(SimulationConfig config, const Overrides& overrides);

// ---------------------------------------------------------------------------
// run

struct RunOutput {
  std::filesystem::path trajectory_csv;
  std::filesystem::path stats_json;
  std::filesystem::path manifest_json;
  EnsembleStats stats;
};

/// The config echo plus a "manifest" block (build, episode seeds). Feeding
/// it back to cmd_run reproduces the run byte for byte.
nlohmann::json make_manifest(const SimulationConfig& config);

/// Runs the ensemble and writes trajectory.csv, stats.json, manifest.json
/// into `out_dir` (created if missing).
RunOutput cmd_run(const SimulationConfig& config,
                  const std::filesystem::path& out_dir);

// ---------------------------------------------------------------------------
// check

struct CheckResult {
  ConditionReport conditions;
  DefectionRateReport bound;  // only the epsilon fields are populated
};

CheckResult cmd_check(const SimulationConfig& config);
nlohmann::json to_json(const CheckResult& result);

// ---------------------------------------------------------------------------
// deviate

/// `strategy` is a strategy kind name, a deviation-library name
/// (always_defect, defect_once, defect_share), or "library" for all three.
std::vector<DeviationReport> cmd_deviate(const SimulationConfig& config,
                                         std::size_t deviant,
                                         const std::string& strategy,
                                         std::int64_t defect_at = 0);
nlohmann::json to_json(const std::vector<DeviationReport>& reports);

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double value = 0.0;
  double defection_rate = 0.0;
  double epsilon = 1.0;
  std::string verdict;  // "cooperative" or "not_guaranteed"
};

/// Sets a named numeric field (any parameter, or base_audit_frequency,
/// prereg_audit_boost, tau, r_cap, redemption_steps, sanction_delay).
/// Throws Error(ParseError, name) for unknown names.
void set_field(SimulationConfig& config, const std::string& name, double value);

std::vector<SweepRow> cmd_sweep(const SimulationConfig& config,
                                const std::string& parameter,
                                const std::vector<double>& grid);
void write_sweep_csv(std::ostream& out, const std::string& parameter,
                     const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const std::string& parameter,
                             const std::vector<SweepRow>& rows);

/// Parses "0.1,0.2,0.5" into numbers; Error(ParseError, "grid") otherwise.
std::vector<double> parse_grid(const std::string& text);

}  // namespace agisim::cli
