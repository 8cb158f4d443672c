#pragma once

#include "agisim/model.hpp"

namespace agisim {

struct Trajectory;

/// Stage utility split into its three bracketed groups.
struct UtilityBreakdown {
  double economic = 0.0;  // lambda T_i + mu K + phi s_i K
  double security = 0.0;  // sigma S - xi sum_{j != i} T_j
  double costs = 0.0;     // eta r_i^2 + theta (1 - V_i)
  double total = 0.0;     // economic + security - costs

  bool operator==(const UtilityBreakdown&) const = default;
};

/// Evaluates the stage utility of `player` at the state's timestep.
/// `pool_access == false` zeroes the knowledge terms (mu K and phi s K),
/// which is how a revoked or excluded player is paid.
UtilityBreakdown stage_utility(const GameState& state, PlayerId player,
                               const JointChoice& choice,
                               const Parameters& params,
                               bool pool_access = true);

/// sum_t delta^t U_i(t) over the steps where `player` is active.
/// Throws Error(PlayerAbsent) if the player never appears.
double discounted_utility(const Trajectory& trajectory, PlayerId player,
                          const Parameters& params);

/// Bound on the omitted tail of the infinite sum:
/// delta^horizon * max_abs_utility / (1 - delta).
double truncation_tail_bound(double delta, int horizon, double max_abs_utility);

}  // namespace agisim
