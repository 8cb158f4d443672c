#include "agisim/dynamics.hpp"

#include <algorithm>
#include <string>

#include "agisim/errors.hpp"

namespace agisim {

namespace {

void require_choices(const GameState& state,
                     std::span<const JointChoice> choices) {
  if (choices.size() < state.size()) {
    throw Error(ErrorCode::MissingChoice, std::to_string(choices.size()));
  }
  if (choices.size() > state.size()) {
    throw Error(ErrorCode::UnknownPlayer, std::to_string(state.size()),
                "choice supplied for a player not in the state");
  }
}

}  // namespace

bool AuditSelection::contains(PlayerId id) const {
  return std::binary_search(players.begin(), players.end(), id);
}

std::vector<std::uint8_t> AuditSelection::mask(std::size_t n) const {
  std::vector<std::uint8_t> out(n, 0);
  for (PlayerId id : players) {
    if (index_of(id) < n) out[index_of(id)] = 1;
  }
  return out;
}

std::vector<double> step_capability(const GameState& state,
                                    std::span<const JointChoice> choices,
                                    const Parameters& params) {
  require_choices(state, choices);
  std::vector<double> next(state.capability);
  for (std::size_t i = 0; i < next.size(); ++i) {
    const Player& p = state.players[i];
    const JointChoice& c = choices[i];
    const double transparency = 1.0 + params.gamma * (c.share ? 1.0 : 0.0);
    next[i] += params.alpha * c.resource * p.compute * p.expertise * transparency;
  }
  return next;
}

double step_knowledge(const GameState& state,
                      std::span<const JointChoice> choices,
                      const Parameters& params) {
  require_choices(state, choices);
  double shared = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (choices[i].share) shared += state.capability[i];
  }
  return state.knowledge + params.beta * shared;
}

std::vector<std::uint8_t> step_verification(const GameState& state,
                                            const AuditSelection& selection,
                                            Rng& rng,
                                            const Parameters& params) {
  const auto audited = selection.mask(state.size());
  std::vector<std::uint8_t> next(state.size(), 0);
  for (std::size_t i = 0; i < next.size(); ++i) {
    const bool success = rng.bernoulli(params.p_audit);
    next[i] = (audited[i] && success) ? 1 : 0;
  }
  return next;
}

double step_security(std::span<const double> capabilities,
                     std::span<const std::uint8_t> verification) {
  if (capabilities.size() != verification.size()) {
    throw Error(ErrorCode::KeyMismatch,
                std::to_string(capabilities.size()) + " vs " +
                    std::to_string(verification.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < capabilities.size(); ++i) {
    if (verification[i]) total += capabilities[i];
  }
  return total;
}

GameState transition(const GameState& state,
                     std::span<const JointChoice> choices,
                     const AuditSelection& selection, Rng& rng,
                     const Parameters& params, SecurityTiming timing) {
  GameState next;
  next.t = state.t + 1;
  next.players = state.players;
  next.capability = step_capability(state, choices, params);
  next.knowledge = step_knowledge(state, choices, params);
  next.verified = step_verification(state, selection, rng, params);
  next.security = timing == SecurityTiming::Current
                      ? step_security(next.capability, next.verified)
                      : step_security(state.capability, state.verified);
  next.sanctions = state.sanctions;
  return next;
}

}  // namespace agisim
