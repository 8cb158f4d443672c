#include "agisim/payoff.hpp"

#include <cmath>
#include <string>

#include "agisim/errors.hpp"
#include "agisim/trajectory.hpp"

namespace agisim {

UtilityBreakdown stage_utility(const GameState& state, PlayerId player,
                               const JointChoice& choice,
                               const Parameters& params, bool pool_access) {
  const std::size_t i = state.position(player);

  double rivals = 0.0;
  for (std::size_t j = 0; j < state.size(); ++j) {
    if (j != i) rivals += state.capability[j];
  }

  UtilityBreakdown u;
  u.economic = params.lambda_econ * state.capability[i];
  if (pool_access) {
    u.economic += params.mu * state.knowledge;
    if (choice.share) u.economic += params.phi * state.knowledge;
  }
  u.security = params.sigma * state.security - params.xi * rivals;
  u.costs = params.eta * choice.resource * choice.resource +
            params.theta * (1.0 - static_cast<double>(state.verified[i]));
  u.total = u.economic + u.security - u.costs;
  return u;
}

double discounted_utility(const Trajectory& trajectory, PlayerId player,
                          const Parameters& params) {
  const auto idx = index_of(player);
  double total = 0.0;
  bool seen = false;
  for (const StepRecord& step : trajectory.steps) {
    if (idx >= step.utilities.size()) continue;
    seen = true;
    total += std::pow(params.delta, static_cast<double>(step.state.t)) *
             step.utilities[idx].total;
  }
  if (!seen) throw Error(ErrorCode::PlayerAbsent, std::to_string(idx));
  return total;
}

double truncation_tail_bound(double delta, int horizon,
                             double max_abs_utility) {
  return std::pow(delta, horizon) * max_abs_utility / (1.0 - delta);
}

}  // namespace agisim
