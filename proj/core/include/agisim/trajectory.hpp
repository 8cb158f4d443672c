#pragma once

#include <cstdint>
#include <vector>

#include "agisim/dynamics.hpp"
#include "agisim/model.hpp"
#include "agisim/payoff.hpp"

namespace agisim {

/// Result of auditing one player for defection.
struct DetectionOutcome {
  PlayerId player{};
  bool audited = false;
  bool truly_defecting = false;
  bool flagged = false;

  bool operator==(const DetectionOutcome&) const = default;
};

/// One timestep: the state at time t, the choices that entered the
/// equations (after sanctions), audits, detections and stage utilities.
/// Every per-player vector is indexed like `state.players`.
struct StepRecord {
  GameState state;
  std::vector<JointChoice> choices;
  AuditSelection audits;
  std::vector<DetectionOutcome> detections;
  std::vector<UtilityBreakdown> utilities;
  bool milestone = false;

  bool operator==(const StepRecord&) const = default;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::size_t founders = 0;
  std::vector<StepRecord> steps;
  GameState final_state;
  double tail_bound = 0.0;

  bool operator==(const Trajectory&) const = default;
};

}  // namespace agisim
