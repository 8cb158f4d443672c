#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agisim/model.hpp"
#include "agisim/rng.hpp"

namespace agisim {

/// Players chosen for a verification audit in one step, sorted by id.
struct AuditSelection {
  std::vector<PlayerId> players;

  bool contains(PlayerId id) const;
  /// Dense 0/1 mask over the first `n` player positions.
  std::vector<std::uint8_t> mask(std::size_t n) const;

  bool operator==(const AuditSelection&) const = default;
};

/// Which verification flags feed the security stock.
///  - Current: S(t+1) = sum V_i(t+1) T_i(t+1)  (default)
///  - Lagged:  S(t+1) = sum V_i(t) T_i(t)
enum class SecurityTiming : std::uint8_t { Current, Lagged };

/// T_i(t+1) = T_i(t) + alpha r_i c_i e_i (1 + gamma s_i).
std::vector<double> step_capability(const GameState& state,
                                    std::span<const JointChoice> choices,
                                    const Parameters& params);

/// K(t+1) = K(t) + beta sum s_i T_i(t), using pre-update capabilities.
double step_knowledge(const GameState& state,
                      std::span<const JointChoice> choices,
                      const Parameters& params);

/// V_i(t+1) = audited_i * Bernoulli(p_audit). Draws one uniform per player
/// in position order whether or not the player is audited, so selections
/// of different sizes leave the stream aligned.
std::vector<std::uint8_t> step_verification(const GameState& state,
                                            const AuditSelection& selection,
                                            Rng& rng, const Parameters& params);

/// S = sum V_i T_i over matching positions; Error(KeyMismatch) otherwise.
double step_security(std::span<const double> capabilities,
                     std::span<const std::uint8_t> verification);

/// Capability, knowledge (from old T), verification, then security; t + 1.
/// Sanction states are carried over unchanged.
GameState transition(const GameState& state,
                     std::span<const JointChoice> choices,
                     const AuditSelection& selection, Rng& rng,
                     const Parameters& params,
                     SecurityTiming timing = SecurityTiming::Current);

}  // namespace agisim
