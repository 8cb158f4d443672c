#include "agisim/mechanisms.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "agisim/errors.hpp"

namespace agisim {

void validate_mechanisms(const MechanismConfig& c) {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(c.base_audit_frequency)) {
    throw Error(ErrorCode::OutOfRange, "base_audit_frequency");
  }
  if (!(c.prereg_audit_boost >= 0.0) || !std::isfinite(c.prereg_audit_boost)) {
    throw Error(ErrorCode::OutOfRange, "prereg_audit_boost");
  }
  if (c.tau < 1) throw Error(ErrorCode::InvalidTau, "tau");
  if (c.sanction_delay < 1) throw Error(ErrorCode::OutOfRange, "sanction_delay");
  if (c.redemption_steps < 1) throw Error(ErrorCode::OutOfRange, "redemption_steps");
  if (!unit(c.r_cap)) throw Error(ErrorCode::OutOfRange, "r_cap");
}

Digest sha256(std::span<const std::uint8_t> bytes) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  return out;
}

std::string to_hex(const Digest& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  s.reserve(digest.size() * 2);
  for (auto b : digest) {
    s.push_back(kHex[b >> 4]);
    s.push_back(kHex[b & 0x0F]);
  }
  return s;
}

Commitment commit_preregistration(std::span<const std::uint8_t> plan,
                                  PlayerId player, std::int64_t t) {
  if (plan.empty()) {
    throw Error(ErrorCode::EmptyPlan, std::to_string(index_of(player)));
  }
  return Commitment{player, t, sha256(plan), std::nullopt};
}

bool verify_commitment(const Commitment& commitment,
                       std::span<const std::uint8_t> revealed) {
  return sha256(revealed) == commitment.digest;
}

std::string canonical_plan_encoding(std::string_view json_text) {
  try {
    // nlohmann::json stores objects in std::map, so dump() emits sorted keys.
    return nlohmann::json::parse(json_text).dump();
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "plan", e.what());
  }
}

double effective_audit_frequency(const MechanismConfig& c) {
  double f = c.base_audit_frequency;
  if (c.preregistration_enabled) f += c.prereg_audit_boost;
  return std::clamp(f, 0.0, 1.0);
}

double effective_tau(const MechanismConfig& c) {
  return c.staged_deployment_enabled ? static_cast<double>(c.tau) : 1.0;
}

std::vector<std::int64_t> milestone_schedule(int tau, int horizon) {
  if (tau < 1) throw Error(ErrorCode::InvalidTau, std::to_string(tau));
  std::vector<std::int64_t> out;
  for (std::int64_t t = tau; t <= horizon; t += tau) out.push_back(t);
  return out;
}

bool is_legal_transition(SanctionLevel from, SanctionLevel to) {
  const int a = static_cast<int>(from);
  const int b = static_cast<int>(to);
  return std::abs(a - b) <= 1;
}

SanctionState transition_sanction(SanctionState state, SanctionLevel to,
                                  std::int64_t t) {
  if (!is_legal_transition(state.level, to)) {
    throw Error(ErrorCode::IllegalTransition,
                std::string(to_string(state.level)) + "->" +
                    std::string(to_string(to)));
  }
  if (to != state.level) {
    state.level = to;
    state.since = t;
    state.redemption_counter = 0;
  }
  return state;
}

namespace {

SanctionLevel rung_up(SanctionLevel l) {
  return l == SanctionLevel::Excluded
             ? l
             : static_cast<SanctionLevel>(static_cast<int>(l) + 1);
}

SanctionLevel rung_down(SanctionLevel l) {
  return l == SanctionLevel::None
             ? l
             : static_cast<SanctionLevel>(static_cast<int>(l) - 1);
}

}  // namespace

SanctionState advance_sanction(SanctionState state, bool violated,
                               bool verified_compliant, std::int64_t t,
                               const MechanismConfig& config) {
  if (violated && verified_compliant) {
    throw Error(ErrorCode::OutOfRange, "violated/verified_compliant",
                "flags are mutually exclusive");
  }
  const std::int64_t next = t + 1;

  if (violated) {
    state.pending.push_back(t + config.sanction_delay);
    state.redemption_counter = 0;
  } else if (verified_compliant && state.level != SanctionLevel::None) {
    if (++state.redemption_counter >= config.redemption_steps) {
      const SanctionLevel lower = rung_down(state.level);
      state = transition_sanction(std::move(state), lower, next);
    }
  }

  auto due = std::partition(state.pending.begin(), state.pending.end(),
                            [next](std::int64_t at) { return at > next; });
  const auto fired = std::distance(due, state.pending.end());
  state.pending.erase(due, state.pending.end());
  for (std::ptrdiff_t k = 0; k < fired; ++k) {
    const SanctionLevel higher = rung_up(state.level);
    state = transition_sanction(std::move(state), higher, next);
  }
  return state;
}

SanctionedChoices apply_sanctions(const GameState& state,
                                  std::span<const JointChoice> choices,
                                  const MechanismConfig& config) {
  SanctionedChoices out;
  out.choices.assign(choices.begin(), choices.end());
  out.pool_access.assign(choices.size(), 1);
  for (std::size_t i = 0; i < choices.size() && i < state.sanctions.size(); ++i) {
    const SanctionLevel level = state.sanctions[i].level;
    if (level == SanctionLevel::Revoked || level == SanctionLevel::Excluded) {
      out.choices[i].share = false;
      out.pool_access[i] = 0;
    }
    if (level == SanctionLevel::Excluded) {
      out.choices[i].resource = std::min(out.choices[i].resource, config.r_cap);
    }
  }
  return out;
}

std::string_view to_string(MembershipTier tier) {
  switch (tier) {
    case MembershipTier::Core: return "core";
    case MembershipTier::Associate: return "associate";
    case MembershipTier::Observer: return "observer";
  }
  return "observer";
}

MembershipTier classify_membership(const Player& player, double capability,
                                   double max_compute, double max_capability,
                                   const TierThresholds& th) {
  const bool compute_ok = player.compute >= th.compute_fraction_min * max_compute;
  const bool capability_ok =
      capability >= th.capability_fraction_min * max_capability;
  if (compute_ok && capability_ok) return MembershipTier::Core;
  if (compute_ok || capability_ok) return MembershipTier::Associate;
  return MembershipTier::Observer;
}

MembershipTier classify_membership(const GameState& state, PlayerId player,
                                   const TierThresholds& th) {
  const std::size_t i = state.position(player);
  double max_c = 0.0;
  double max_t = 0.0;
  for (std::size_t j = 0; j < state.size(); ++j) {
    max_c = std::max(max_c, state.players[j].compute);
    max_t = std::max(max_t, state.capability[j]);
  }
  return classify_membership(state.players[i], state.capability[i], max_c,
                             max_t, th);
}

}  // namespace agisim
