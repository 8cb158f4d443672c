#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agisim/model.hpp"
#include "agisim/sanction.hpp"

namespace agisim {

struct MechanismConfig {
  bool preregistration_enabled = false;
  double base_audit_frequency = 0.2;
  double prereg_audit_boost = 0.0;
  bool staged_deployment_enabled = false;
  int tau = 1;  // steps between agreed milestones
  bool sanctions_enabled = true;
  int sanction_delay = 1;    // steps from detection to escalation
  int redemption_steps = 5;  // compliant steps per de-escalation
  double r_cap = 0.2;        // resource ceiling for excluded players

  bool operator==(const MechanismConfig&) const = default;
};

void validate_mechanisms(const MechanismConfig& config);

// ---------------------------------------------------------------------------
// Pre-registration

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> bytes);
std::string to_hex(const Digest& digest);

struct Commitment {
  PlayerId player{};
  std::int64_t t_committed = 0;
  Digest digest{};
  std::optional<std::vector<std::uint8_t>> revealed;

  bool operator==(const Commitment&) const = default;
};

/// Commits to the SHA-256 of `plan`. Throws Error(EmptyPlan) on no bytes.
Commitment commit_preregistration(std::span<const std::uint8_t> plan,
                                  PlayerId player, std::int64_t t);

/// True iff sha256(revealed) equals the committed digest.
bool verify_commitment(const Commitment& commitment,
                       std::span<const std::uint8_t> revealed);

/// Canonical JSON encoding of a plan: keys sorted, no insignificant
/// whitespace. Throws Error(ParseError) on malformed input.
std::string canonical_plan_encoding(std::string_view json_text);

// ---------------------------------------------------------------------------
// Audit frequency and staged deployment

/// base + boost (when pre-registration is on), clamped to [0, 1].
double effective_audit_frequency(const MechanismConfig& config);

/// Milestone spacing used in the defection bound: tau with staged
/// deployment, 1 (every step is its own milestone) without it.
double effective_tau(const MechanismConfig& config);

/// tau, 2 tau, ... up to and including `horizon`. Error(InvalidTau) if tau < 1.
std::vector<std::int64_t> milestone_schedule(int tau, int horizon);

// ---------------------------------------------------------------------------
// Graduated sanctions

/// Same level, one rung up, or one rung down.
bool is_legal_transition(SanctionLevel from, SanctionLevel to);

/// Moves `state` to `to` at time t, or throws Error(IllegalTransition).
SanctionState transition_sanction(SanctionState state, SanctionLevel to,
                                  std::int64_t t);

/// Advances one player's sanction state at the end of step t; the result
/// is the state in force at t + 1.
///
/// A violation schedules an escalation for t + sanction_delay and resets
/// the redemption counter. A verified-compliant step increments the counter;
/// after redemption_steps of them the level drops one rung and the counter
/// resets. Escalations whose activation time is <= t + 1 are then applied,
/// one rung each, saturating at Excluded. Passing both flags throws.
SanctionState advance_sanction(SanctionState state, bool violated,
                               bool verified_compliant, std::int64_t t,
                               const MechanismConfig& config);

struct SanctionedChoices {
  std::vector<JointChoice> choices;
  std::vector<std::uint8_t> pool_access;
};

/// Revoked and Excluded players are cut off from the shared pool: s_i is
/// forced to 0 and pool_access is cleared (no mu K, phi s K in the payoff).
/// Excluded players additionally have r_i capped at r_cap.
SanctionedChoices apply_sanctions(const GameState& state,
                                  std::span<const JointChoice> choices,
                                  const MechanismConfig& config);

// ---------------------------------------------------------------------------
// Membership

enum class MembershipTier : std::uint8_t { Core, Associate, Observer };

std::string_view to_string(MembershipTier tier);

struct TierThresholds {
  double compute_fraction_min = 0.20;
  double capability_fraction_min = 0.80;

  bool operator==(const TierThresholds&) const = default;
};

/// Core when both c_i >= f_c max_c and T_i >= f_T max_T hold, Associate
/// when exactly one does, Observer otherwise.
MembershipTier classify_membership(const Player& player, double capability,
                                   double max_compute, double max_capability,
                                   const TierThresholds& thresholds = {});

/// Same, with the maxima taken over the state's players.
MembershipTier classify_membership(const GameState& state, PlayerId player,
                                   const TierThresholds& thresholds = {});

}  // namespace agisim
